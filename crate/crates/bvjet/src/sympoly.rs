//! Commutative polynomials in the coordinates of a Lie algebra: trace
//! polynomials of representations, the invariance identity, evaluation on
//! even exterior-algebra elements, and transgression to odd cocycles.

use crate::ce::CeElt;
use crate::lie::LieAlgebra;
use crate::rat::Q;
use crate::{BvError, Result};
use num_traits::{One, Zero};
use std::collections::BTreeMap;

/// Polynomial in `nvars` commuting variables; keys are exponent vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymPoly {
    pub nvars: usize,
    pub terms: BTreeMap<Vec<u8>, Q>,
}

impl SymPoly {
    pub fn zero(nvars: usize) -> Self {
        SymPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Q) -> Self {
        let mut p = SymPoly::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Q::one())
    }

    pub fn var(nvars: usize, a: usize) -> Self {
        let mut e = vec![0u8; nvars];
        e[a] = 1;
        let mut p = SymPoly::zero(nvars);
        p.add_term(e, Q::one());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, exps: Vec<u8>, c: Q) {
        assert_eq!(exps.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exps) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &SymPoly) -> SymPoly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, s: &Q) -> SymPoly {
        if s.is_zero() {
            return SymPoly::zero(self.nvars);
        }
        SymPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c.clone() * s.clone())).collect(),
        }
    }

    pub fn mul(&self, other: &SymPoly) -> SymPoly {
        let mut out = SymPoly::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u8> = e1
                    .iter()
                    .zip(e2.iter())
                    .map(|(a, b)| a.checked_add(*b).expect("exponent overflow"))
                    .collect();
                out.add_term(e, c1.clone() * c2.clone());
            }
        }
        out
    }

    pub fn partial(&self, a: usize) -> SymPoly {
        let mut out = SymPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[a] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[a] -= 1;
            out.add_term(e2, c.clone() * Q::from_integer(e[a].into()));
        }
        out
    }

    /// Total degree when homogeneous; `None` for zero or mixed degrees.
    pub fn degree(&self) -> Option<u32> {
        let mut deg = None;
        for e in self.terms.keys() {
            let d: u32 = e.iter().map(|x| *x as u32).sum();
            match deg {
                None => deg = Some(d),
                Some(d0) if d0 != d => return None,
                _ => {}
            }
        }
        deg
    }

    /// The degree-`k` homogeneous part.
    pub fn degree_part(&self, k: u32) -> SymPoly {
        SymPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.iter().map(|x| *x as u32).sum::<u32>() == k)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn max_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().map(|x| *x as u32).sum()).max().unwrap_or(0)
    }

    /// Evaluate on even exterior-algebra elements (they commute, so the
    /// substitution is well defined).
    pub fn eval_ce(&self, at: &[CeElt]) -> CeElt {
        assert_eq!(at.len(), self.nvars);
        let mut out = CeElt::zero();
        for (e, c) in &self.terms {
            let mut t = CeElt::one();
            for (a, exp) in e.iter().enumerate() {
                for _ in 0..*exp {
                    t = t.mul(&at[a]);
                    if t.is_zero() {
                        break;
                    }
                }
                if t.is_zero() {
                    break;
                }
            }
            out = out.add(&t.scale(c));
        }
        out
    }
}

/// `Tr((sum_a x^a M_a)^ell)` for a representation given by its basis images.
pub fn trace_polynomial(matrices: &[Vec<Vec<Q>>], ell: u32) -> SymPoly {
    let nvars = matrices.len();
    assert!(nvars > 0 && ell > 0);
    let size = matrices[0].len();
    // M(x): size x size matrix of linear polynomials.
    let mx: Vec<Vec<SymPoly>> = (0..size)
        .map(|i| {
            (0..size)
                .map(|j| {
                    let mut p = SymPoly::zero(nvars);
                    for (a, m) in matrices.iter().enumerate() {
                        if !m[i][j].is_zero() {
                            let mut e = vec![0u8; nvars];
                            e[a] = 1;
                            p.add_term(e, m[i][j].clone());
                        }
                    }
                    p
                })
                .collect()
        })
        .collect();
    let mut power = mx.clone();
    for _ in 1..ell {
        let mut next = vec![vec![SymPoly::zero(nvars); size]; size];
        for i in 0..size {
            for j in 0..size {
                let mut s = SymPoly::zero(nvars);
                for (k, pik) in power[i].iter().enumerate() {
                    s = s.add(&pik.mul(&mx[k][j]));
                }
                next[i][j] = s;
            }
        }
        power = next;
    }
    let mut tr = SymPoly::zero(nvars);
    for (i, row) in power.iter().enumerate() {
        tr = tr.add(&row[i]);
    }
    tr
}

/// The invariance defect of `p` in doubled variables
/// (`x` first, `y` second): `sum_b (dp/dx^b)(x) * [y, x]^b`.
/// Identically zero exactly when `p` is invariant under the adjoint action.
pub fn invariance_defect(lie: &LieAlgebra, p: &SymPoly) -> SymPoly {
    let d = lie.dim;
    assert_eq!(p.nvars, d);
    let nn = 2 * d;
    let mut out = SymPoly::zero(nn);
    for b in 0..d {
        let dp = p.partial(b);
        if dp.is_zero() {
            continue;
        }
        // Embed dp into the doubled variable set.
        let mut dp2 = SymPoly::zero(nn);
        for (e, c) in &dp.terms {
            let mut e2 = vec![0u8; nn];
            e2[..d].copy_from_slice(e);
            dp2.add_term(e2, c.clone());
        }
        // [y, x]^b = f[c][e][b] y^c x^e.
        let mut bracket = SymPoly::zero(nn);
        for c in 0..d {
            for e in 0..d {
                let f = &lie.f[c][e][b];
                if f.is_zero() {
                    continue;
                }
                let mut exps = vec![0u8; nn];
                exps[d + c] += 1;
                exps[e] += 1;
                bracket.add_term(exps, f.clone());
            }
        }
        out = out.add(&dp2.mul(&bracket));
    }
    out
}

/// Transgression of an invariant polynomial: per homogeneous degree `l`,
/// `(2l - 1)^{-1} sum_b (dp/dx^b)(Theta) theta^b`. The degree-zero part is
/// rejected (no transgression of constants).
pub fn transgression(lie: &LieAlgebra, p: &SymPoly) -> Result<CeElt> {
    if p.nvars != lie.dim {
        return Err(BvError::Domain("variable count differs from the algebra dimension".into()));
    }
    if !p.degree_part(0).is_zero() {
        return Err(BvError::Domain("transgression needs a polynomial without constant term".into()));
    }
    let theta_sq: Vec<CeElt> = (0..lie.dim).map(|a| crate::ce::theta_squared(lie, a)).collect();
    let mut out = CeElt::zero();
    for l in 1..=p.max_degree() {
        let pl = p.degree_part(l);
        if pl.is_zero() {
            continue;
        }
        let norm = Q::new(1.into(), (2 * l - 1).into());
        for b in 0..lie.dim {
            let db = pl.partial(b);
            if db.is_zero() {
                continue;
            }
            let ev = db.eval_ce(&theta_sq);
            if ev.is_zero() {
                continue;
            }
            out = out.add(&ev.mul(&CeElt::generator(b)).scale(&norm));
        }
    }
    Ok(out)
}

/// Transgression computed directly from a representation:
/// `l/(2l - 1) Tr((sum_a theta^a M_a)^{2l - 1})`. Agrees with
/// [`transgression`] of the corresponding trace polynomial.
pub fn transgression_direct(matrices: &[Vec<Vec<Q>>], ell: u32) -> CeElt {
    assert!(ell > 0);
    let size = matrices[0].len();
    let rho: Vec<Vec<CeElt>> = (0..size)
        .map(|i| {
            (0..size)
                .map(|j| {
                    let mut e = CeElt::zero();
                    for (a, m) in matrices.iter().enumerate() {
                        if !m[i][j].is_zero() {
                            e = e.add(&CeElt::generator(a).scale(&m[i][j]));
                        }
                    }
                    e
                })
                .collect()
        })
        .collect();
    let mut power = rho.clone();
    for _ in 1..(2 * ell - 1) {
        let mut next = vec![vec![CeElt::zero(); size]; size];
        for i in 0..size {
            for j in 0..size {
                let mut s = CeElt::zero();
                for (k, pik) in power[i].iter().enumerate() {
                    s = s.add(&pik.mul(&rho[k][j]));
                }
                next[i][j] = s;
            }
        }
        power = next;
    }
    let mut tr = CeElt::zero();
    for (i, row) in power.iter().enumerate() {
        tr = tr.add(&row[i]);
    }
    tr.scale(&Q::new(ell.into(), (2 * ell - 1).into()))
}

/// `1/2 <x, x>`, the quadratic invariant of the pairing itself.
pub fn pairing_quadratic(lie: &LieAlgebra) -> SymPoly {
    let mut p = SymPoly::zero(lie.dim);
    let half = Q::new(1.into(), 2.into());
    for a in 0..lie.dim {
        for b in 0..lie.dim {
            if lie.kappa[a][b].is_zero() {
                continue;
            }
            let mut e = vec![0u8; lie.dim];
            e[a] += 1;
            e[b] += 1;
            p.add_term(e, half.clone() * lie.kappa[a][b].clone());
        }
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ce::{ce_cubic, ce_differential, shifted_poisson};
    use crate::rat::q;

    fn adjoint(lie: &LieAlgebra) -> Vec<Vec<Vec<Q>>> {
        lie.adjoint_matrices()
    }

    #[test]
    fn trace_polynomial_of_sl2_defining_is_the_pairing() {
        // For the two-by-two defining representation, Tr(M(x)^2) equals
        // 2 Q(x) with Q the pairing quadratic: kappa here is the trace form.
        let lie = LieAlgebra::builtin("sl2").unwrap();
        let rep = &lie.reps[0].matrices;
        let p2 = trace_polynomial(rep, 2);
        let q2 = pairing_quadratic(&lie).scale(&q(2));
        assert_eq!(p2, q2);
    }

    #[test]
    fn trace_polynomials_are_invariant() {
        for name in ["sl2", "so3"] {
            let lie = LieAlgebra::builtin(name).unwrap();
            for ell in 1..=3u32 {
                let pad = trace_polynomial(&adjoint(&lie), ell);
                assert!(invariance_defect(&lie, &pad).is_zero(), "{} ad l={}", name, ell);
                let pdef = trace_polynomial(&lie.reps[0].matrices, ell);
                assert!(invariance_defect(&lie, &pdef).is_zero(), "{} def l={}", name, ell);
            }
            // A non-invariant polynomial is detected.
            let bad = SymPoly::var(lie.dim, 0);
            assert!(!invariance_defect(&lie, &bad).is_zero());
        }
    }

    #[test]
    fn quadratic_transgression_is_the_cubic_element() {
        for name in ["sl2", "so3"] {
            let lie = LieAlgebra::builtin(name).unwrap();
            let tau = transgression(&lie, &pairing_quadratic(&lie)).unwrap();
            assert_eq!(tau, ce_cubic(&lie), "{}", name);
        }
    }

    #[test]
    fn transgression_formulas_agree() {
        for name in ["sl2", "so3"] {
            let lie = LieAlgebra::builtin(name).unwrap();
            for rep in [adjoint(&lie), lie.reps[0].matrices.clone()] {
                for ell in 1..=3u32 {
                    let p = trace_polynomial(&rep, ell);
                    let via_gradient = transgression(&lie, &p).unwrap();
                    let direct = transgression_direct(&rep, ell);
                    assert_eq!(via_gradient, direct, "{} l={}", name, ell);
                }
            }
        }
    }

    #[test]
    fn invariants_evaluate_to_zero_on_theta_and_transgress_to_cocycles() {
        for name in ["sl2", "so3"] {
            let lie = LieAlgebra::builtin(name).unwrap();
            let theta_sq: Vec<CeElt> =
                (0..lie.dim).map(|a| crate::ce::theta_squared(&lie, a)).collect();
            for rep in [adjoint(&lie), lie.reps[0].matrices.clone()] {
                for ell in 1..=3u32 {
                    let p = trace_polynomial(&rep, ell);
                    assert!(p.eval_ce(&theta_sq).is_zero(), "{} l={} eval", name, ell);
                    let tau = transgression(&lie, &p).unwrap();
                    assert!(ce_differential(&lie, &tau).is_zero(), "{} l={} cocycle", name, ell);
                }
            }
        }
    }

    #[test]
    fn products_of_positive_invariants_transgress_to_zero() {
        let lie = LieAlgebra::builtin("sl2").unwrap();
        let p = trace_polynomial(&adjoint(&lie), 2);
        let qq = pairing_quadratic(&lie);
        let prod = p.mul(&qq);
        assert!(transgression(&lie, &prod).unwrap().is_zero());
        // And transgressions Poisson-commute.
        let tp = transgression(&lie, &p).unwrap();
        let tq = transgression(&lie, &qq).unwrap();
        assert!(shifted_poisson(&lie, &tp, &tq).is_zero());
    }

    #[test]
    fn poisson_bracket_of_invariant_generators_vanishes() {
        // Invariant cochains of a simple algebra pairwise commute under the
        // shifted bracket; check it on the invariant basis in each degree.
        let lie = LieAlgebra::builtin("so3").unwrap();
        for k in 0..=3u32 {
            for f in crate::ce::invariants(&lie, k) {
                for l in 0..=3u32 {
                    for g in crate::ce::invariants(&lie, l) {
                        assert!(shifted_poisson(&lie, &f, &g).is_zero(), "k={} l={}", k, l);
                    }
                }
            }
        }
    }
}
