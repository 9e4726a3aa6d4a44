//! Dense exact linear algebra over the rationals: row reduction, rank,
//! kernels, inverses, and representative selection modulo a subspace.
//! Dimensions here are small (cochain spaces of low-dimensional Lie
//! algebras), so dense Gauss elimination is the right tool.

use crate::rat::Q;
use num_traits::{One, Zero};

pub type Matrix = Vec<Vec<Q>>;

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(mat: &mut Matrix) -> Vec<usize> {
    let rows = mat.len();
    if rows == 0 {
        return vec![];
    }
    let cols = mat[0].len();
    let mut pivots = Vec::new();
    let mut r = 0usize;
    for c in 0..cols {
        let Some(pr) = (r..rows).find(|&i| !mat[i][c].is_zero()) else {
            continue;
        };
        mat.swap(r, pr);
        let inv = Q::one() / mat[r][c].clone();
        for j in c..cols {
            let t = mat[r][j].clone() * inv.clone();
            mat[r][j] = t;
        }
        for i in 0..rows {
            if i != r && !mat[i][c].is_zero() {
                let factor = mat[i][c].clone();
                for j in c..cols {
                    let t = mat[i][j].clone() - factor.clone() * mat[r][j].clone();
                    mat[i][j] = t;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    pivots
}

pub fn rank(mat: &Matrix) -> usize {
    let mut m = mat.clone();
    rref(&mut m).len()
}

/// Basis of the kernel of the linear map `x -> mat * x`
/// (`mat` is rows-by-cols; kernel vectors have length `cols`).
pub fn kernel_basis(mat: &Matrix) -> Vec<Vec<Q>> {
    if mat.is_empty() {
        return vec![];
    }
    let cols = mat[0].len();
    let mut m = mat.clone();
    let pivots = rref(&mut m);
    let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
    let mut basis = Vec::new();
    for free in 0..cols {
        if pivot_set.contains(&free) {
            continue;
        }
        let mut v = vec![Q::zero(); cols];
        v[free] = Q::one();
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = -m[row][free].clone();
        }
        basis.push(v);
    }
    basis
}

/// Inverse of a square matrix, or `None` if singular.
pub fn inverse(mat: &Matrix) -> Option<Matrix> {
    let n = mat.len();
    if n == 0 || mat.iter().any(|r| r.len() != n) {
        return None;
    }
    let mut aug: Matrix = mat
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }));
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() != n || pivots.iter().enumerate().any(|(i, &c)| c != i) {
        return None;
    }
    Some(aug.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Incremental span used to pick representatives: feed vectors, and
/// `absorb` tells whether each one enlarged the span.
pub struct Span {
    rows: Matrix,
    pivots: Vec<usize>,
}

impl Span {
    pub fn new() -> Self {
        Span { rows: vec![], pivots: vec![] }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the span; if a nonzero remainder is left, adds it
    /// and returns true.
    pub fn absorb(&mut self, v: &[Q]) -> bool {
        let mut w = v.to_vec();
        for (row, &p) in self.rows.iter().zip(self.pivots.iter()) {
            if !w[p].is_zero() {
                let factor = w[p].clone();
                for j in 0..w.len() {
                    let t = w[j].clone() - factor.clone() * row[j].clone();
                    w[j] = t;
                }
            }
        }
        let Some(p) = w.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = Q::one() / w[p].clone();
        for x in w.iter_mut() {
            let t = x.clone() * inv.clone();
            *x = t;
        }
        self.rows.push(w);
        self.pivots.push(p);
        true
    }

    /// Membership test without modifying the span.
    pub fn contains(&self, v: &[Q]) -> bool {
        let mut w = v.to_vec();
        for (row, &p) in self.rows.iter().zip(self.pivots.iter()) {
            if !w[p].is_zero() {
                let factor = w[p].clone();
                for j in 0..w.len() {
                    let t = w[j].clone() - factor.clone() * row[j].clone();
                    w[j] = t;
                }
            }
        }
        w.iter().all(|x| x.is_zero())
    }
}

impl Default for Span {
    fn default() -> Self {
        Self::new()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::q;

    #[test]
    fn rank_and_kernel() {
        // x + y + z = 0 has a 2-dimensional kernel.
        let m = vec![vec![q(1), q(1), q(1)]];
        assert_eq!(rank(&m), 1);
        let k = kernel_basis(&m);
        assert_eq!(k.len(), 2);
        for v in &k {
            let s: Q = v.iter().cloned().sum();
            assert!(s.is_zero());
        }
    }

    #[test]
    fn inverse_round_trip() {
        let m = vec![vec![q(2), q(1)], vec![q(1), q(1)]];
        let inv = inverse(&m).unwrap();
        // m * inv = id
        for i in 0..2 {
            for j in 0..2 {
                let mut s = Q::zero();
                for k in 0..2 {
                    s += m[i][k].clone() * inv[k][j].clone();
                }
                assert_eq!(s, if i == j { q(1) } else { q(0) });
            }
        }
        let sing = vec![vec![q(1), q(2)], vec![q(2), q(4)]];
        assert!(inverse(&sing).is_none());
    }

    #[test]
    fn span_absorbs_independent_only() {
        let mut s = Span::new();
        assert!(s.absorb(&[q(1), q(0), q(1)]));
        assert!(s.absorb(&[q(0), q(1), q(0)]));
        assert!(!s.absorb(&[q(2), q(3), q(2)]));
        assert_eq!(s.dim(), 2);
        assert!(s.contains(&[q(5), q(-1), q(5)]));
        assert!(!s.contains(&[q(0), q(0), q(1)]));
    }
}
