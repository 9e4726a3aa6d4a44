//! The horizontal complex: differential, contracting homotopy, projection
//! onto functionals.
//!
//! The filtration weight `p` of a monomial is its `sig` count (the corner
//! symbol `eta` counts `n + 1`). The differential removes one `sig` and
//! applies a total derivative; it vanishes identically on weight 0. The
//! homotopy raises the weight by one. On positive field degree the two
//! satisfy `d H + H d = 1` (weight >= 1) and `d H + P integral = 1`
//! (weight 0), which the tests take as the defining properties.

use crate::context::JetContext;
use crate::generator::{Generator, JetVar};
use crate::jet::{total_derivative, total_derivative_multi, variational_left};
use crate::monomial::Monomial;
use crate::multi_index::MultiIndex;
use crate::poly::Poly;
use crate::rat::Q;
use crate::{BvError, Result};
use num_bigint::BigInt;

/// The horizontal differential. On a monomial `sig_I f_I` it contracts each
/// `sig_i` in turn against the total derivative `d_i`; on the corner symbol
/// it produces the full product `sig_1 ... sig_n` (times any `u` factors).
pub fn horizontal_d(f: &Poly, ctx: &JetContext) -> Poly {
    let mut out = Poly::zero();
    for (m, c) in &f.terms {
        if m.has_eta() {
            // eta -> sig_1 ... sig_n, coefficient and u factors unchanged.
            let mut full = Poly::constant(c.clone());
            for i in 0..ctx.n {
                full = full.mul(&Poly::from_gen(Generator::Sigma(i as u8)), ctx);
            }
            let rest: Vec<(Generator, u16)> = m
                .0
                .iter()
                .filter(|(g, _)| !matches!(g, Generator::Eta))
                .cloned()
                .collect();
            out = out.add(&full.mul(&Poly::from_mono(Monomial(rest), Q::from_integer(1.into())), ctx));
            continue;
        }
        let single = Poly::from_mono(m.clone(), c.clone());
        for i in 0..ctx.n {
            let g = Generator::Sigma(i as u8);
            if m.exponent_of(&g) == 0 {
                continue;
            }
            let shifted = total_derivative(&single, i, ctx);
            out = out.add(&shifted.partial_left(&g, ctx));
        }
    }
    out
}

/// The contracting homotopy. Per monomial of field degree `k` and weight `p`:
///
/// - field degree 0 with `p <= n`: maps to 0 by convention;
/// - the corner line: `H(c eta u) = c sig_1 ... sig_n u`;
/// - otherwise the jet-variable homotopy
///   `sum (1/k) (beta_i / (|beta| + p)) C(alpha, beta) sig_i
///    d^{beta - e_i} [ z_0 (-d)^{alpha - beta} (dL_{z_alpha} m) ]`
///   summed over jet variables `z_alpha` of the monomial with `alpha > 0`,
///   multi-indices `0 < beta <= alpha`, and directions `i` with
///   `beta_i >= 1`.
pub fn homotopy_h(f: &Poly, ctx: &JetContext) -> Poly {
    let mut out = Poly::zero();
    for (m, c) in &f.terms {
        if m.has_eta() {
            let mut full = Poly::constant(c.clone());
            for i in 0..ctx.n {
                full = full.mul(&Poly::from_gen(Generator::Sigma(i as u8)), ctx);
            }
            let rest: Vec<(Generator, u16)> = m
                .0
                .iter()
                .filter(|(g, _)| !matches!(g, Generator::Eta))
                .cloned()
                .collect();
            out = out.add(&full.mul(&Poly::from_mono(Monomial(rest), Q::from_integer(1.into())), ctx));
            continue;
        }
        let k = m.field_degree();
        if k == 0 {
            continue;
        }
        let p = m.sigma_count();
        if p as usize >= ctx.n {
            // Every summand carries a sig_i already present: zero.
            continue;
        }
        let single = Poly::from_mono(m.clone(), c.clone());
        // Distinct jet variables of the monomial.
        let jets: Vec<JetVar> = m
            .0
            .iter()
            .filter_map(|(g, _)| match g {
                Generator::Jet(v) if !v.alpha.is_zero() => Some(*v),
                _ => None,
            })
            .collect();
        for v in jets {
            let extracted = single.partial_left(&Generator::Jet(v), ctx);
            if extracted.is_zero() {
                continue;
            }
            let z0 = Poly::from_gen(Generator::Jet(JetVar {
                slot: v.slot,
                comp: v.comp,
                alpha: MultiIndex::zero(),
            }));
            for beta in v.alpha.sub_indices() {
                if beta.is_zero() {
                    continue;
                }
                let gamma = v.alpha.checked_sub(&beta).expect("beta <= alpha");
                // z_0 * (-d)^{alpha-beta} (extracted), computed once per beta.
                let mut inner = total_derivative_multi(&extracted, &gamma, ctx);
                if gamma.order() % 2 == 1 {
                    inner = inner.neg();
                }
                inner = z0.mul(&inner, ctx);
                let binom = v.alpha.binom(&beta);
                let denom = BigInt::from(beta.order() + p) * BigInt::from(k);
                for i in 0..ctx.n {
                    if beta.0[i] == 0 {
                        continue;
                    }
                    let coeff = Q::new(BigInt::from(beta.0[i]) * binom.clone(), denom.clone());
                    let outer = total_derivative_multi(
                        &inner,
                        &beta.checked_sub(&MultiIndex::unit(i)).expect("beta_i >= 1"),
                        ctx,
                    );
                    let term = Poly::from_gen(Generator::Sigma(i as u8)).mul(&outer, ctx);
                    out = out.add(&term.scale(&coeff));
                }
            }
        }
    }
    out
}

/// The projection onto canonical representatives of functionals: per
/// field-degree-`k` component, `(1/k) sum_z z_0 (dL-variational of z)`.
/// Errors when the input carries horizontal symbols or a nonzero constant
/// (field-degree-0) part, where the normalization is undefined.
pub fn projection_p(f: &Poly, ctx: &JetContext) -> Result<Poly> {
    ensure_weight_zero(f, "projection")?;
    let mut out = Poly::zero();
    for (k, comp) in f.field_degree_components() {
        if k == 0 {
            if !comp.is_zero() {
                return Err(BvError::Domain(
                    "projection undefined on constants (field degree 0)".into(),
                ));
            }
            continue;
        }
        let mut acc = Poly::zero();
        for slot in 0..ctx.slots.len() {
            for comp_idx in 0..ctx.comps(slot) {
                let vd = variational_left(&comp, slot, comp_idx, ctx);
                if vd.is_zero() {
                    continue;
                }
                let z0 = Poly::from_gen(Generator::Jet(JetVar {
                    slot: slot as u8,
                    comp: comp_idx as u8,
                    alpha: MultiIndex::zero(),
                }));
                acc = acc.add(&z0.mul(&vd, ctx));
            }
        }
        out = out.add(&acc.scale(&Q::new(BigInt::from(1), BigInt::from(k))));
    }
    Ok(out)
}

/// True when the density is a sum of total derivatives: all variational
/// derivatives vanish and there is no constant part. Requires a weight-0
/// input.
pub fn is_total_derivative(f: &Poly, ctx: &JetContext) -> Result<bool> {
    ensure_weight_zero(f, "total-derivative test")?;
    for (k, comp) in f.field_degree_components() {
        if k == 0 {
            if !comp.is_zero() {
                return Ok(false);
            }
            continue;
        }
        for slot in 0..ctx.slots.len() {
            for comp_idx in 0..ctx.comps(slot) {
                if !variational_left(&comp, slot, comp_idx, ctx).is_zero() {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

fn ensure_weight_zero(f: &Poly, what: &str) -> Result<()> {
    if f.terms.keys().any(|m| m.sigma_count() > 0 || m.has_eta()) {
        return Err(BvError::Domain(format!(
            "{what} requires a density without horizontal symbols"
        )));
    }
    Ok(())
}

/// A functional: a density considered modulo total derivatives. Equality and
/// vanishing route through the variational test, never through syntactic
/// comparison.
#[derive(Clone, Debug)]
pub struct Functional {
    pub density: Poly,
}

impl Functional {
    pub fn new(density: Poly, _ctx: &JetContext) -> Result<Self> {
        ensure_weight_zero(&density, "functional")?;
        Ok(Functional { density })
    }

    pub fn is_zero(&self, ctx: &JetContext) -> Result<bool> {
        is_total_derivative(&self.density, ctx)
    }

    pub fn eq(&self, other: &Functional, ctx: &JetContext) -> Result<bool> {
        is_total_derivative(&self.density.sub(&other.density), ctx)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::context::FieldDescriptor;
    use crate::lie::LieAlgebra;

    fn ctx_n(n: usize) -> JetContext {
        let lie = LieAlgebra::abelian(2, "ab2").unwrap();
        JetContext::new(
            n,
            vec![
                FieldDescriptor { name: "y".into(), ghost: 0, parity: 0, st_indexed: false, lie_valued: true, antifield_of: None },
                FieldDescriptor { name: "y+".into(), ghost: -1, parity: 1, st_indexed: false, lie_valued: true, antifield_of: Some(0) },
            ],
            lie,
        )
        .unwrap()
    }

    fn y(comp: u8, alpha: MultiIndex) -> Poly {
        Poly::from_gen(Generator::jet(0, comp, alpha))
    }

    fn yp(comp: u8, alpha: MultiIndex) -> Poly {
        Poly::from_gen(Generator::jet(1, comp, alpha))
    }

    #[test]
    fn homotopy_inverts_d_on_a_first_jet() {
        // One dimension: H(y_1) = sig_1 * y, then d(sig_1 y) = y_1 again.
        let c = ctx_n(1);
        let e0 = MultiIndex::unit(0);
        let f = y(0, e0);
        let h = homotopy_h(&f, &c);
        let expect = Poly::from_gen(Generator::Sigma(0)).mul(&y(0, MultiIndex::zero()), &c);
        assert_eq!(h, expect);
        assert_eq!(horizontal_d(&h, &c), f);
        // And the projection of an exact density is zero.
        assert!(projection_p(&f, &c).unwrap().is_zero());
        assert!(is_total_derivative(&f, &c).unwrap());
    }

    #[test]
    fn projection_normalizes_by_field_degree() {
        // P(y y_1) over n=1: delta_y(y y_1) = y_1 - d_1(y) ... = 0, exact.
        // P(y_1 y_1) : delta_y = -2 y_2; P = (1/2) y * (-2 y_2) = -y y_2.
        let c = ctx_n(1);
        let e0 = MultiIndex::unit(0);
        let two = e0.add(&e0);
        let f = y(0, e0).pow(2, &c);
        let p = projection_p(&f, &c).unwrap();
        let expect = y(0, MultiIndex::zero()).mul(&y(0, two), &c).neg();
        assert_eq!(p, expect);
        // f - P f must be a total derivative (it equals d of something).
        assert!(is_total_derivative(&f.sub(&p), &c).unwrap());
        assert!(!is_total_derivative(&f, &c).unwrap());
    }

    #[test]
    fn projection_rejects_constants_and_sigmas() {
        let c = ctx_n(2);
        assert!(projection_p(&Poly::one(), &c).is_err());
        let with_sig = Poly::from_gen(Generator::Sigma(0));
        assert!(projection_p(&with_sig, &c).is_err());
        assert!(is_total_derivative(&with_sig, &c).is_err());
    }

    #[test]
    fn corner_rules() {
        // d(eta) = H(eta) = sig_1 ... sig_n, with u factors carried along.
        let c = ctx_n(3);
        let eta_u = Poly::from_gen(Generator::Eta).mul(&Poly::from_gen(Generator::U(1)), &c);
        let mut full = Poly::one();
        for i in 0..3 {
            full = full.mul(&Poly::from_gen(Generator::Sigma(i)), &c);
        }
        full = full.mul(&Poly::from_gen(Generator::U(1)), &c);
        assert_eq!(horizontal_d(&eta_u, &c), full);
        assert_eq!(homotopy_h(&eta_u, &c), full);
        // d of the full sig product is zero... no: d removes sig against d_i of
        // the coefficient; on a constant coefficient it vanishes.
        assert!(horizontal_d(&full, &c).is_zero());
    }

    #[test]
    fn homotopy_identity_on_mixed_two_field_case() {
        // n = 2, weight 1, field degree 2: (dH + Hd) f = f exactly.
        let c = ctx_n(2);
        let e1 = MultiIndex::unit(1);
        let f = Poly::from_gen(Generator::Sigma(0))
            .mul(&y(0, e1), &c)
            .mul(&y(1, MultiIndex::zero()), &c);
        let lhs = horizontal_d(&homotopy_h(&f, &c), &c).add(&homotopy_h(&horizontal_d(&f, &c), &c));
        assert_eq!(lhs, f);
    }

    #[test]
    fn odd_density_splits_as_exact_plus_projection() {
        // n = 1, f = y+ y+_1, an odd pair density: d(Hf) + Pf = f. Here the
        // homotopy part dies on an odd square and P reproduces f whole.
        let c = ctx_n(1);
        let e0 = MultiIndex::unit(0);
        let f = yp(0, MultiIndex::zero()).mul(&yp(0, e0), &c);
        let p = projection_p(&f, &c).unwrap();
        let dh = horizontal_d(&homotopy_h(&f, &c), &c);
        assert_eq!(dh.add(&p), f);
    }

    #[test]
    fn functional_equality_is_modulo_total_derivatives() {
        let c = ctx_n(2);
        let e0 = MultiIndex::unit(0);
        let base = y(0, MultiIndex::zero()).mul(&y(1, e0), &c);
        let shifted = base.add(&total_derivative(&y(0, e0).mul(&y(1, e0), &c), 1, &c));
        let f1 = Functional::new(base, &c).unwrap();
        let f2 = Functional::new(shifted, &c).unwrap();
        assert!(f1.eq(&f2, &c).unwrap());
        assert!(!f1.is_zero(&c).unwrap());
    }
}
