//! Jet calculus: total derivatives, evolutionary vector fields and their
//! prolongations, variational derivatives.

use crate::context::JetContext;
use crate::generator::{Generator, JetVar};
use crate::monomial::Monomial;
use crate::multi_index::MultiIndex;
use crate::poly::Poly;
use crate::rat::Q;
use std::collections::{BTreeMap, HashMap};

/// Total spacetime derivative in direction `i` (0-based): the even derivation
/// shifting every jet variable's multi-index by `e_i`. Horizontal symbols and
/// covariant variables are constants for it.
pub fn total_derivative(f: &Poly, i: usize, ctx: &JetContext) -> Poly {
    let mut out = Poly::zero();
    for (m, c) in &f.terms {
        for (pos, (g, e)) in m.0.iter().enumerate() {
            let Generator::Jet(v) = g else { continue };
            let shifted = Generator::Jet(JetVar {
                slot: v.slot,
                comp: v.comp,
                alpha: v.alpha.add(&MultiIndex::unit(i)),
            });
            // Leibniz in place: replacing one factor by its derivative. The
            // replaced generator has the same parity, so extracting it to the
            // left and remultiplying the shifted one from the left cancels in
            // sign; the monomial product handles ordering and odd squares.
            let mut reduced = m.clone();
            if *e == 1 {
                reduced.0.remove(pos);
            } else {
                reduced.0[pos].1 = e - 1;
            }
            let prefix: u32 = m.0[..pos]
                .iter()
                .map(|(h, eh)| ctx.gen_parity(h) as u32 * (*eh as u32))
                .sum();
            let pg = ctx.gen_parity(g) as u32;
            if let Some((mm, s)) = Monomial::from_gen(shifted).mul(&reduced, ctx) {
                let mut coeff = c.clone() * Q::from_integer((*e).into());
                if s < 0 {
                    coeff = -coeff;
                }
                if (pg * prefix) % 2 == 1 {
                    coeff = -coeff;
                }
                out.add_term(mm, coeff);
            }
        }
    }
    out
}

/// Iterated total derivative `d^alpha`.
pub fn total_derivative_multi(f: &Poly, alpha: &MultiIndex, ctx: &JetContext) -> Poly {
    let mut out = f.clone();
    for i in 0..ctx.n {
        for _ in 0..alpha.0[i] {
            out = total_derivative(&out, i, ctx);
        }
    }
    out
}

/// An evolutionary vector field, given by its values on the undifferentiated
/// generators. Applying it prolongs the assignment to all jet variables:
/// the value on the `alpha`-jet is the `alpha`-th total derivative of the
/// assigned value, multiplied from the left of the left partial derivative.
#[derive(Clone, Debug, Default)]
pub struct EvolutionaryVf {
    /// (slot, component) -> value.
    pub assignments: BTreeMap<(usize, usize), Poly>,
}

impl EvolutionaryVf {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn assign(mut self, slot: usize, comp: usize, value: Poly) -> Self {
        if !value.is_zero() {
            let e = self.assignments.entry((slot, comp)).or_insert_with(Poly::zero);
            *e = e.add(&value);
        }
        self
    }

    pub fn scale(&self, k: &Q) -> Self {
        EvolutionaryVf {
            assignments: self
                .assignments
                .iter()
                .map(|(k2, v)| (*k2, v.scale(k)))
                .collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for ((s, c), v) in &other.assignments {
            let e = out.assignments.entry((*s, *c)).or_insert_with(Poly::zero);
            *e = e.add(v);
        }
        out.assignments.retain(|_, v| !v.is_zero());
        out
    }

    /// Applies the prolongation to `f`. Derivatives of the assigned values
    /// are memoized per call.
    pub fn apply(&self, f: &Poly, ctx: &JetContext) -> Poly {
        let mut out = Poly::zero();
        let mut cache: HashMap<(usize, usize, MultiIndex), Poly> = HashMap::new();
        // Collect the jet variables appearing in f whose slot/comp has an
        // assignment.
        let mut wanted: BTreeMap<JetVar, ()> = BTreeMap::new();
        for m in f.terms.keys() {
            for (g, _) in &m.0 {
                if let Generator::Jet(v) = g {
                    if self.assignments.contains_key(&(v.slot as usize, v.comp as usize)) {
                        wanted.insert(*v, ());
                    }
                }
            }
        }
        for v in wanted.keys() {
            let key = (v.slot as usize, v.comp as usize, v.alpha);
            let value = cache
                .entry(key)
                .or_insert_with(|| {
                    let base = &self.assignments[&(v.slot as usize, v.comp as usize)];
                    total_derivative_multi(base, &v.alpha, ctx)
                })
                .clone();
            let d = f.partial_left(&Generator::Jet(*v), ctx);
            out = out.add(&value.mul(&d, ctx));
        }
        out
    }

    /// Graded commutator `[self, other]` as an operator identity check
    /// helper: applies both orders to `f` and returns the difference
    /// `self(other(f)) - (-1)^{p q} other(self(f))` for the given operator
    /// parities.
    pub fn commutator_apply(
        &self,
        other: &Self,
        p_self: u8,
        p_other: u8,
        f: &Poly,
        ctx: &JetContext,
    ) -> Poly {
        let a = self.apply(&other.apply(f, ctx), ctx);
        let b = other.apply(&self.apply(f, ctx), ctx);
        if (p_self * p_other) % 2 == 1 {
            a.add(&b)
        } else {
            a.sub(&b)
        }
    }
}

/// Left variational derivative with respect to `(slot, comp)`:
/// `sum_alpha (-d)^alpha (dL/d z_alpha) f`.
pub fn variational_left(f: &Poly, slot: usize, comp: usize, ctx: &JetContext) -> Poly {
    // Collect the multi-indices actually present for this slot/comp.
    let mut alphas: std::collections::BTreeSet<MultiIndex> = Default::default();
    for m in f.terms.keys() {
        for (g, _) in &m.0 {
            if let Generator::Jet(v) = g {
                if v.slot as usize == slot && v.comp as usize == comp {
                    alphas.insert(v.alpha);
                }
            }
        }
    }
    let mut out = Poly::zero();
    for alpha in alphas {
        let d = f.partial_left(
            &Generator::Jet(JetVar { slot: slot as u8, comp: comp as u8, alpha }),
            ctx,
        );
        if d.is_zero() {
            continue;
        }
        let mut t = total_derivative_multi(&d, &alpha, ctx);
        if alpha.order() % 2 == 1 {
            t = t.neg();
        }
        out = out.add(&t);
    }
    out
}

/// The field-degree grading operator: multiplies each monomial by its number
/// of jet factors. This is the prolongation of the assignment `z -> z` over
/// every slot, but implemented directly.
pub fn euler_degree(f: &Poly) -> Poly {
    let mut out = Poly::zero();
    for (m, c) in &f.terms {
        let k = m.field_degree();
        if k > 0 {
            out.add_term(m.clone(), c.clone() * Q::from_integer(k.into()));
        }
    }
    out
}

/// The antifield-degree operator: multiplies each monomial by the number of
/// its jet factors living in antifield slots.
pub fn antifield_degree(f: &Poly, ctx: &JetContext) -> Poly {
    let mut out = Poly::zero();
    for (m, c) in &f.terms {
        let mut k = 0u32;
        for (g, e) in &m.0 {
            if let Generator::Jet(v) = g {
                if ctx.field_of_slot(v.slot as usize).antifield_of.is_some() {
                    k += *e as u32;
                }
            }
        }
        if k > 0 {
            out.add_term(m.clone(), c.clone() * Q::from_integer(k.into()));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::context::FieldDescriptor;
    use crate::lie::LieAlgebra;

    fn ctx2() -> JetContext {
        let lie = LieAlgebra::abelian(1, "ab1").unwrap();
        JetContext::new(
            2,
            vec![
                FieldDescriptor { name: "y".into(), ghost: 0, parity: 0, st_indexed: false, lie_valued: false, antifield_of: None },
                FieldDescriptor { name: "y+".into(), ghost: -1, parity: 1, st_indexed: false, lie_valued: false, antifield_of: Some(0) },
            ],
            lie,
        )
        .unwrap()
    }

    fn y(alpha: MultiIndex) -> Poly {
        Poly::from_gen(Generator::jet(0, 0, alpha))
    }

    fn yp(alpha: MultiIndex) -> Poly {
        Poly::from_gen(Generator::jet(1, 0, alpha))
    }

    #[test]
    fn total_derivatives_commute_and_leibniz() {
        let c = ctx2();
        let e0 = MultiIndex::unit(0);
        let e1 = MultiIndex::unit(1);
        let f = y(MultiIndex::zero()).mul(&y(e0), &c).add(&yp(MultiIndex::zero()).mul(&yp(e1), &c));
        let d01 = total_derivative(&total_derivative(&f, 0, &c), 1, &c);
        let d10 = total_derivative(&total_derivative(&f, 1, &c), 0, &c);
        assert_eq!(d01, d10);

        // Leibniz on a product of homogeneous factors.
        let g = y(e1);
        let lhs = total_derivative(&f.mul(&g, &c), 0, &c);
        let rhs = total_derivative(&f, 0, &c)
            .mul(&g, &c)
            .add(&f.mul(&total_derivative(&g, 0, &c), &c));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn total_derivative_on_odd_square_structure() {
        // d_0(y+ * y+_{e0}) = y+_{e0} y+_{e0} + y+ y+_{e0+e0} = y+ y+_{2e0}.
        let c = ctx2();
        let e0 = MultiIndex::unit(0);
        let two_e0 = e0.add(&e0);
        let f = yp(MultiIndex::zero()).mul(&yp(e0), &c);
        let d = total_derivative(&f, 0, &c);
        let expect = yp(MultiIndex::zero()).mul(&yp(two_e0), &c);
        assert_eq!(d, expect);
    }

    #[test]
    fn prolongation_is_a_derivation() {
        let c = ctx2();
        let e0 = MultiIndex::unit(0);
        // tau(y) = y^2, even vector field.
        let tau = EvolutionaryVf::new().assign(0, 0, y(MultiIndex::zero()).pow(2, &c));
        let f = y(e0);
        let g = y(MultiIndex::zero()).mul(&yp(e0), &c);
        let lhs = tau.apply(&f.mul(&g, &c), &c);
        let rhs = tau.apply(&f, &c).mul(&g, &c).add(&f.mul(&tau.apply(&g, &c), &c));
        assert_eq!(lhs, rhs);
        // Prolongation: tau(y_{e0}) = d_0(y^2) = 2 y y_{e0}.
        let expect = Poly::constant(crate::rat::q(2))
            .mul(&y(MultiIndex::zero()), &c)
            .mul(&y(e0), &c);
        assert_eq!(tau.apply(&y(e0), &c), expect);
    }

    #[test]
    fn variational_derivative_kills_total_derivatives() {
        let c = ctx2();
        let e0 = MultiIndex::unit(0);
        let e1 = MultiIndex::unit(1);
        // Any total derivative has vanishing variational derivatives.
        let f = y(MultiIndex::zero())
            .mul(&y(e0), &c)
            .mul(&yp(e1), &c)
            .add(&y(e1).pow(2, &c));
        for i in 0..2 {
            let df = total_derivative(&f, i, &c);
            assert!(variational_left(&df, 0, 0, &c).is_zero(), "slot 0, dir {i}");
            assert!(variational_left(&df, 1, 0, &c).is_zero(), "slot 1, dir {i}");
        }
        // And a non-exact density has a nonzero one.
        let g = y(e0).pow(2, &c);
        assert!(!variational_left(&g, 0, 0, &c).is_zero());
    }

    #[test]
    fn euler_counts_field_degree() {
        let c = ctx2();
        let e0 = MultiIndex::unit(0);
        let f = y(MultiIndex::zero()).mul(&y(e0), &c); // degree 2
        assert_eq!(euler_degree(&f), f.scale(&crate::rat::q(2)));
        let g = yp(MultiIndex::zero()); // one antifield
        assert_eq!(antifield_degree(&g, &c), g);
        assert!(antifield_degree(&f, &c).is_zero());
    }
}
