//! Multi-indices recording repeated spacetime derivatives.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;

/// Maximum supported number of spacetime directions. Contexts carry their
/// actual dimension `n <= MAX_DIM`; entries at positions `>= n` must stay 0.
pub const MAX_DIM: usize = 4;

/// A multi-index `alpha` in `N^n`, stored in a fixed-size array. Entries are
/// `u8` with checked arithmetic; jet orders relevant to the engine stay far
/// below that bound (this is a capacity limit, not a truncation of the
/// algebra).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MultiIndex(pub [u8; MAX_DIM]);

impl MultiIndex {
    pub fn zero() -> Self {
        MultiIndex([0; MAX_DIM])
    }

    /// The unit multi-index `e_i` (0-based direction).
    pub fn unit(i: usize) -> Self {
        let mut a = [0u8; MAX_DIM];
        a[i] = 1;
        MultiIndex(a)
    }

    /// Total order `|alpha|`.
    pub fn order(&self) -> u32 {
        self.0.iter().map(|&x| x as u32).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn add(&self, other: &MultiIndex) -> MultiIndex {
        let mut a = [0u8; MAX_DIM];
        for i in 0..MAX_DIM {
            a[i] = self.0[i]
                .checked_add(other.0[i])
                .expect("multi-index entry overflow");
        }
        MultiIndex(a)
    }

    /// Componentwise difference, `None` unless `other <= self` everywhere.
    pub fn checked_sub(&self, other: &MultiIndex) -> Option<MultiIndex> {
        let mut a = [0u8; MAX_DIM];
        for i in 0..MAX_DIM {
            a[i] = self.0[i].checked_sub(other.0[i])?;
        }
        Some(MultiIndex(a))
    }

    /// Componentwise `self <= other`.
    pub fn leq(&self, other: &MultiIndex) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    /// Product of per-entry binomial coefficients `prod_i C(alpha_i, beta_i)`.
    pub fn binom(&self, beta: &MultiIndex) -> BigInt {
        let mut r = BigInt::from(1);
        for i in 0..MAX_DIM {
            r *= crate::rat::binomial(self.0[i] as u32, beta.0[i] as u32);
        }
        r
    }

    /// All multi-indices `beta` with `0 <= beta <= self` componentwise,
    /// in a deterministic order.
    pub fn sub_indices(&self) -> Vec<MultiIndex> {
        let mut out = vec![MultiIndex::zero()];
        for i in 0..MAX_DIM {
            let cap = self.0[i];
            if cap == 0 {
                continue;
            }
            let mut next = Vec::with_capacity(out.len() * (cap as usize + 1));
            for base in &out {
                for v in 0..=cap {
                    let mut b = *base;
                    b.0[i] = v;
                    next.push(b);
                }
            }
            out = next;
        }
        out
    }

    /// All multi-indices supported on the first `n` entries with total order
    /// at most `max_order`, in a deterministic order.
    pub fn all_up_to_order(n: usize, max_order: u32) -> Vec<MultiIndex> {
        let mut out: Vec<MultiIndex> = vec![MultiIndex::zero()];
        for _ in 0..max_order {
            let mut frontier: Vec<MultiIndex> = Vec::new();
            for m in &out {
                for i in 0..n {
                    let mut b = *m;
                    b.0[i] += 1;
                    frontier.push(b);
                }
            }
            out.extend(frontier);
            out.sort();
            out.dedup();
        }
        out
    }

    /// Rendering restricted to the first `n` entries, e.g. `(1,0,2)`.
    pub fn render(&self, n: usize) -> String {
        let body: Vec<String> = self.0[..n].iter().map(|x| x.to_string()).collect();
        format!("({})", body.join(","))
    }
}

/// Graded lexicographic order: first by total order, then lexicographically.
/// This is the canonical order used inside monomials and for display.
impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.order()
            .cmp(&other.order())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl std::fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.render(MAX_DIM))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graded_lex_order() {
        let a = MultiIndex([0, 2, 0, 0]);
        let b = MultiIndex([1, 0, 0, 0]);
        let c = MultiIndex([1, 1, 0, 0]);
        assert!(b < a, "order 1 before order 2");
        assert!(a < c, "(0,2) lex-after? no: order 2 both, (0,2,0,0) < (1,1,0,0)");
        assert!(MultiIndex::zero() < b);
    }

    #[test]
    fn sub_indices_count() {
        let a = MultiIndex([2, 1, 0, 0]);
        let subs = a.sub_indices();
        assert_eq!(subs.len(), 6);
        assert!(subs.iter().all(|b| b.leq(&a)));
    }

    #[test]
    fn all_up_to_order_counts() {
        // n=3: #{|alpha| <= 2} = C(3,3) + ... = 1 + 3 + 6 = 10.
        assert_eq!(MultiIndex::all_up_to_order(3, 2).len(), 10);
        assert_eq!(MultiIndex::all_up_to_order(1, 4).len(), 5);
    }

    #[test]
    fn binom_vector() {
        let a = MultiIndex([3, 1, 0, 0]);
        let b = MultiIndex([2, 1, 0, 0]);
        assert_eq!(a.binom(&b), BigInt::from(3));
    }
}
