//! Monomials of the free graded supercommutative algebra.
//!
//! A monomial is a sorted list of `(generator, exponent)` pairs. Odd
//! generators square to zero, so their exponents are always 1. The corner
//! symbol `eta` spans a one-dimensional piece on its own: any product of
//! `eta` with a jet variable, a `sig_i`, or another `eta` vanishes (products
//! with the even covariant variables `u^i` survive).

use crate::context::JetContext;
use crate::generator::Generator;
use serde::{Deserialize, Serialize};

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct Monomial(pub Vec<(Generator, u16)>);

impl Monomial {
    /// The empty product.
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn from_gen(g: Generator) -> Self {
        Monomial(vec![(g, 1)])
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of jet-variable factors counted with exponents.
    pub fn field_degree(&self) -> u32 {
        self.0
            .iter()
            .filter(|(g, _)| g.is_jet())
            .map(|&(_, e)| e as u32)
            .sum()
    }

    /// Number of `sig` factors.
    pub fn sigma_count(&self) -> u32 {
        self.0.iter().filter(|(g, _)| g.is_sigma()).count() as u32
    }

    pub fn has_eta(&self) -> bool {
        self.0.iter().any(|(g, _)| matches!(g, Generator::Eta))
    }

    /// Number of `u` factors counted with exponents.
    pub fn u_degree(&self) -> u32 {
        self.0
            .iter()
            .filter(|(g, _)| matches!(g, Generator::U(_)))
            .map(|&(_, e)| e as u32)
            .sum()
    }

    /// Largest jet order appearing.
    pub fn max_jet_order(&self) -> u32 {
        self.0
            .iter()
            .filter_map(|(g, _)| match g {
                Generator::Jet(v) => Some(v.alpha.order()),
                _ => None,
            })
            .max()
            .unwrap_or(0)
    }

    /// Grassmann parity (0 or 1).
    pub fn parity(&self, ctx: &JetContext) -> u8 {
        let mut p = 0u32;
        for (g, e) in &self.0 {
            p += ctx.gen_parity(g) as u32 * (*e as u32);
        }
        (p % 2) as u8
    }

    /// Ghost number (jet ghosts plus two per `u`; `sig` and `eta` are
    /// ghost-neutral).
    pub fn ghost(&self, ctx: &JetContext) -> i32 {
        self.0
            .iter()
            .map(|(g, e)| ctx.gen_ghost(g) * (*e as i32))
            .sum()
    }

    /// Filtration weight: the `sig` count, with `eta` counting `n + 1`.
    pub fn filtration(&self, ctx: &JetContext) -> u32 {
        if self.has_eta() {
            (ctx.n + 1) as u32
        } else {
            self.sigma_count()
        }
    }

    pub fn exponent_of(&self, g: &Generator) -> u16 {
        self.0
            .binary_search_by(|(h, _)| h.cmp(g))
            .map(|i| self.0[i].1)
            .unwrap_or(0)
    }

    /// Supercommutative product. Returns the merged monomial and the Koszul
    /// sign, or `None` when the product vanishes (odd square, or `eta`
    /// meeting anything other than `u`).
    pub fn mul(&self, other: &Monomial, ctx: &JetContext) -> Option<(Monomial, i8)> {
        let mut out: Vec<(Generator, u16)> = Vec::with_capacity(self.0.len() + other.0.len());
        let mut sign = 1i8;
        // Odd units remaining in self, updated as the merge walks forward.
        let mut odd_left: u32 = self
            .0
            .iter()
            .map(|(g, e)| ctx.gen_parity(g) as u32 * (*e as u32))
            .sum();
        let mut i = 0;
        let mut j = 0;
        while i < self.0.len() || j < other.0.len() {
            let take_right = match (self.0.get(i), other.0.get(j)) {
                (Some((a, _)), Some((b, _))) => b < a,
                (None, Some(_)) => true,
                _ => false,
            };
            if take_right {
                let (g, e) = other.0[j].clone();
                // Moving this block of `other` past everything left in `self`.
                if ctx.gen_parity(&g) == 1 && (e as u32 * odd_left) % 2 == 1 {
                    sign = -sign;
                }
                push_merged(&mut out, g, e)?;
                j += 1;
            } else if i < self.0.len()
                && j < other.0.len()
                && self.0[i].0 == other.0[j].0
            {
                let (g, e1) = self.0[i].clone();
                let e2 = other.0[j].1;
                let p = ctx.gen_parity(&g);
                if p == 1 {
                    // Odd generator on both sides: square is zero.
                    return None;
                }
                odd_left -= p as u32 * e1 as u32;
                push_merged(&mut out, g, e1.checked_add(e2).expect("exponent overflow"))?;
                i += 1;
                j += 1;
            } else {
                let (g, e) = self.0[i].clone();
                odd_left -= ctx.gen_parity(&g) as u32 * e as u32;
                push_merged(&mut out, g, e)?;
                i += 1;
            }
        }
        let m = Monomial(out);
        // eta spans its own line: products with jets or sigs vanish.
        if m.has_eta() && m.0.iter().any(|(g, _)| g.is_jet() || g.is_sigma()) {
            return None;
        }
        Some((m, sign))
    }

    /// Extracts the `sig`/`eta` prefix: returns the Koszul sign of moving all
    /// horizontal symbols to the front, the list of `sig` indices, whether
    /// `eta` is present, and the remaining jet/u monomial.
    pub fn sigma_split(&self, ctx: &JetContext) -> (i8, Vec<u8>, bool, Monomial) {
        // Storage order is jets < sig < eta < u, so the horizontal symbols
        // sit after the jets; each odd symbol moving to the front crosses
        // every jet unit before it.
        let mut jet_odd: u32 = 0;
        let mut sign = 1i8;
        let mut sigmas = Vec::new();
        let mut eta = false;
        let mut rest = Vec::new();
        for (g, e) in &self.0 {
            match g {
                Generator::Jet(_) => {
                    jet_odd += ctx.gen_parity(g) as u32 * (*e as u32);
                    rest.push((g.clone(), *e));
                }
                Generator::Sigma(i) => {
                    // sig_i is odd: it crosses the jet prefix; the sigs keep
                    // their mutual order.
                    if jet_odd % 2 == 1 {
                        sign = -sign;
                    }
                    sigmas.push(*i);
                }
                Generator::Eta => {
                    if (ctx.gen_parity(g) as u32 * jet_odd) % 2 == 1 {
                        sign = -sign;
                    }
                    eta = true;
                }
                Generator::U(_) => rest.push((g.clone(), *e)),
            }
        }
        (sign, sigmas, eta, Monomial(rest))
    }
}

fn push_merged(out: &mut Vec<(Generator, u16)>, g: Generator, e: u16) -> Option<()> {
    if matches!(g, Generator::Eta) && e >= 2 {
        return None;
    }
    out.push((g, e));
    Some(())
}

#[cfg(test)]
mod tests {
    //! The product is checked against a brute-force oracle that expands both
    //! monomials into sequences of generator units, concatenates them, and
    //! bubble-sorts into canonical order counting odd-odd transpositions.
    //! The oracle is independent of the merge algorithm above.

    use super::*;
    use crate::context::{FieldDescriptor, JetContext};
    use crate::generator::JetVar;
    use crate::lie::LieAlgebra;
    use crate::multi_index::MultiIndex;
    use rand::prelude::*;
    use rand_chacha::ChaCha20Rng;

    fn test_ctx() -> JetContext {
        // Two Darboux pairs, one even/odd scalar pair and one odd/even pair,
        // Lie-valued over abelian3 to exercise components; n = 3.
        let lie = LieAlgebra::abelian(3, "abelian3").unwrap();
        JetContext::new(
            3,
            vec![
                FieldDescriptor { name: "x".into(), ghost: 0, parity: 0, st_indexed: false, lie_valued: true, antifield_of: None },
                FieldDescriptor { name: "xi".into(), ghost: -1, parity: 1, st_indexed: false, lie_valued: true, antifield_of: Some(0) },
                FieldDescriptor { name: "c".into(), ghost: 1, parity: 1, st_indexed: false, lie_valued: true, antifield_of: None },
                FieldDescriptor { name: "c+".into(), ghost: -2, parity: 0, st_indexed: false, lie_valued: true, antifield_of: Some(2) },
            ],
            lie,
        )
        .unwrap()
    }

    /// Expands a monomial into one generator per unit.
    fn units(m: &Monomial) -> Vec<Generator> {
        let mut out = Vec::new();
        for (g, e) in &m.0 {
            for _ in 0..*e {
                out.push(g.clone());
            }
        }
        out
    }

    /// Brute-force product: bubble sort with odd-odd sign flips, then fold
    /// equal units back into exponents. Returns `None` on odd squares or an
    /// eta meeting a non-u generator.
    fn oracle_mul(a: &Monomial, b: &Monomial, ctx: &JetContext) -> Option<(Monomial, i8)> {
        let mut seq = units(a);
        seq.extend(units(b));
        let mut sign = 1i8;
        // Bubble sort; each adjacent swap of two odd units flips the sign.
        let len = seq.len();
        for _ in 0..len {
            for k in 0..len.saturating_sub(1) {
                if seq[k + 1] < seq[k] {
                    if ctx.gen_parity(&seq[k]) == 1 && ctx.gen_parity(&seq[k + 1]) == 1 {
                        sign = -sign;
                    }
                    seq.swap(k, k + 1);
                }
            }
        }
        // Adjacent equal odd units: zero.
        for k in 0..len.saturating_sub(1) {
            if seq[k] == seq[k + 1] && ctx.gen_parity(&seq[k]) == 1 {
                return None;
            }
        }
        let mut folded: Vec<(Generator, u16)> = Vec::new();
        for g in seq {
            match folded.last_mut() {
                Some((h, e)) if *h == g => *e += 1,
                _ => folded.push((g, 1)),
            }
        }
        let m = Monomial(folded);
        if m.has_eta()
            && m.0
                .iter()
                .any(|(g, _)| g.is_jet() || g.is_sigma() || (matches!(g, Generator::Eta) && m.exponent_of(g) >= 2))
        {
            return None;
        }
        if m.0.iter().any(|(g, e)| matches!(g, Generator::Eta) && *e >= 2) {
            return None;
        }
        Some((m, sign))
    }

    fn random_monomial(rng: &mut ChaCha20Rng, ctx: &JetContext) -> Monomial {
        let mut m = Monomial::one();
        let gens = rng.gen_range(0..5);
        for _ in 0..gens {
            let g = match rng.gen_range(0..4) {
                0 | 1 => {
                    let slot = rng.gen_range(0..ctx.slots.len()) as u8;
                    let comp = rng.gen_range(0..ctx.comps(slot as usize)) as u8;
                    let mut alpha = MultiIndex::zero();
                    for _ in 0..rng.gen_range(0..3) {
                        alpha = alpha.add(&MultiIndex::unit(rng.gen_range(0..ctx.n)));
                    }
                    Generator::Jet(JetVar { slot, comp, alpha })
                }
                2 => Generator::Sigma(rng.gen_range(0..ctx.n) as u8),
                _ => Generator::U(rng.gen_range(0..ctx.n) as u8),
            };
            match m.mul(&Monomial::from_gen(g), ctx) {
                Some((next, _)) => m = next,
                None => continue,
            }
        }
        m
    }

    #[test]
    fn product_matches_transposition_oracle() {
        let ctx = test_ctx();
        let mut rng = ChaCha20Rng::seed_from_u64(7);
        let mut nonzero = 0;
        for _ in 0..500 {
            let a = random_monomial(&mut rng, &ctx);
            let b = random_monomial(&mut rng, &ctx);
            let fast = a.mul(&b, &ctx);
            let slow = oracle_mul(&a, &b, &ctx);
            assert_eq!(fast, slow, "a={a:?} b={b:?}");
            if fast.is_some() {
                nonzero += 1;
            }
        }
        assert!(nonzero > 100, "oracle run degenerate: {nonzero} nonzero products");
    }

    #[test]
    fn eta_annihilates_jets_and_sigs() {
        let ctx = test_ctx();
        let eta = Monomial::from_gen(Generator::Eta);
        let sig = Monomial::from_gen(Generator::Sigma(0));
        let jet = Monomial::from_gen(Generator::jet(0, 0, MultiIndex::zero()));
        let u = Monomial::from_gen(Generator::U(2));
        assert!(eta.mul(&sig, &ctx).is_none());
        assert!(eta.mul(&jet, &ctx).is_none());
        assert!(eta.mul(&eta, &ctx).is_none());
        let (m, s) = eta.mul(&u, &ctx).unwrap();
        assert_eq!(s, 1);
        assert_eq!(m.u_degree(), 1);
        assert!(m.has_eta());
    }

    #[test]
    fn sigma_split_sign_matches_oracle() {
        // Moving sig symbols to the front must agree with multiplying the
        // pieces back together in front order.
        let ctx = test_ctx();
        let mut rng = ChaCha20Rng::seed_from_u64(11);
        for _ in 0..200 {
            let m = random_monomial(&mut rng, &ctx);
            let (sign, sigmas, eta, rest) = m.sigma_split(&ctx);
            // Rebuild: sig_{i1} ... sig_{ip} * (eta?) * rest.
            let mut front = Monomial::one();
            for i in &sigmas {
                let (next, s) = front.mul(&Monomial::from_gen(Generator::Sigma(*i)), &ctx).unwrap();
                assert_eq!(s, 1);
                front = next;
            }
            if eta {
                let (next, _) = front.mul(&Monomial::from_gen(Generator::Eta), &ctx).unwrap();
                front = next;
            }
            let (rebuilt, s2) = front.mul(&rest, &ctx).expect("split pieces remultiply");
            assert_eq!(rebuilt, m);
            assert_eq!(s2, sign, "m = {m:?}");
        }
    }

    #[test]
    fn degrees_count_units() {
        let ctx = test_ctx();
        let m = Monomial(vec![
            (Generator::jet(0, 1, MultiIndex::zero()), 2),
            (Generator::jet(1, 0, MultiIndex::unit(0)), 1),
            (Generator::Sigma(1), 1),
            (Generator::U(0), 3),
        ]);
        assert_eq!(m.field_degree(), 3);
        assert_eq!(m.sigma_count(), 1);
        assert_eq!(m.u_degree(), 3);
        assert_eq!(m.parity(&ctx), 0); // xi odd + sig odd = even
        assert_eq!(m.ghost(&ctx), 0 * 2 + (-1) + 0 + 6);
        assert_eq!(m.filtration(&ctx), 1);
        assert_eq!(m.max_jet_order(), 1);
    }
}
