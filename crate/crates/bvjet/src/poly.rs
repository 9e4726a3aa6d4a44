//! Polynomials: finite rational linear combinations of monomials.

use crate::context::JetContext;
use crate::generator::Generator;
use crate::monomial::Monomial;
use crate::rat::{render_rational, Q};
use crate::{BvError, Result};
use num_traits::Zero;
use std::collections::BTreeMap;

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Poly {
    pub terms: BTreeMap<Monomial, Q>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Q::from_integer(1.into()))
    }

    pub fn constant(c: Q) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(), c);
        }
        Poly { terms }
    }

    pub fn from_gen(g: Generator) -> Self {
        Poly::from_mono(Monomial::from_gen(g), Q::from_integer(1.into()))
    }

    pub fn from_mono(m: Monomial, c: Q) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn add_term(&mut self, m: Monomial, c: Q) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    fn sweep_zeros(&mut self) {
        self.terms.retain(|_, c| !c.is_zero());
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            let entry = out.terms.entry(m.clone()).or_insert_with(Q::zero);
            *entry += c.clone();
        }
        out.sweep_zeros();
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            let entry = out.terms.entry(m.clone()).or_insert_with(Q::zero);
            *entry -= c.clone();
        }
        out.sweep_zeros();
        out
    }

    pub fn neg(&self) -> Poly {
        Poly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect() }
    }

    pub fn scale(&self, k: &Q) -> Poly {
        if k.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(m, c)| (m.clone(), c.clone() * k.clone())).collect() }
    }

    pub fn mul(&self, other: &Poly, ctx: &JetContext) -> Poly {
        let mut out = Poly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                if let Some((m, s)) = ma.mul(mb, ctx) {
                    let mut c = ca.clone() * cb.clone();
                    if s < 0 {
                        c = -c;
                    }
                    let entry = out.terms.entry(m).or_insert_with(Q::zero);
                    *entry += c;
                }
            }
        }
        out.sweep_zeros();
        out
    }

    pub fn pow(&self, k: u32, ctx: &JetContext) -> Poly {
        let mut out = Poly::one();
        for _ in 0..k {
            out = out.mul(self, ctx);
        }
        out
    }

    /// Left partial derivative with respect to a generator: each monomial
    /// `A g^e B` maps to `e (-1)^{pa(g) pa(A)} g^{e-1} A B`.
    pub fn partial_left(&self, g: &Generator, ctx: &JetContext) -> Poly {
        let pg = ctx.gen_parity(g) as u32;
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let Ok(pos) = m.0.binary_search_by(|(h, _)| h.cmp(g)) else {
                continue;
            };
            let e = m.0[pos].1;
            // Parity of the prefix strictly before g.
            let prefix: u32 = m.0[..pos]
                .iter()
                .map(|(h, eh)| ctx.gen_parity(h) as u32 * (*eh as u32))
                .sum();
            let mut reduced = m.clone();
            if e == 1 {
                reduced.0.remove(pos);
            } else {
                reduced.0[pos].1 = e - 1;
            }
            let mut coeff = c.clone() * Q::from_integer(e.into());
            if (pg * prefix) % 2 == 1 {
                coeff = -coeff;
            }
            let entry = out.terms.entry(reduced).or_insert_with(Q::zero);
            *entry += coeff;
        }
        out.sweep_zeros();
        out
    }

    /// Right partial derivative: each monomial `A g^e B` maps to
    /// `e (-1)^{pa(g) pa(B)} A B g^{e-1}` (the derivative acts from the
    /// right, crossing the suffix).
    pub fn partial_right(&self, g: &Generator, ctx: &JetContext) -> Poly {
        let pg = ctx.gen_parity(g) as u32;
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let Ok(pos) = m.0.binary_search_by(|(h, _)| h.cmp(g)) else {
                continue;
            };
            let e = m.0[pos].1;
            let suffix: u32 = m.0[pos + 1..]
                .iter()
                .map(|(h, eh)| ctx.gen_parity(h) as u32 * (*eh as u32))
                .sum();
            // For even g the e copies of g around the extraction point do not
            // matter; for odd g, e = 1 and the remaining copies are none.
            let mut reduced = m.clone();
            if e == 1 {
                reduced.0.remove(pos);
            } else {
                reduced.0[pos].1 = e - 1;
            }
            let mut coeff = c.clone() * Q::from_integer(e.into());
            if (pg * suffix) % 2 == 1 {
                coeff = -coeff;
            }
            let entry = out.terms.entry(reduced).or_insert_with(Q::zero);
            *entry += coeff;
        }
        out.sweep_zeros();
        out
    }

    /// Splits into homogeneous field-degree components.
    pub fn field_degree_components(&self) -> BTreeMap<u32, Poly> {
        let mut out: BTreeMap<u32, Poly> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.field_degree())
                .or_insert_with(Poly::zero)
                .terms
                .insert(m.clone(), c.clone());
        }
        out
    }

    /// Splits by filtration weight (`sig` count, `eta` counting `n + 1`).
    pub fn filtration_components(&self, ctx: &JetContext) -> BTreeMap<u32, Poly> {
        let mut out: BTreeMap<u32, Poly> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.filtration(ctx))
                .or_insert_with(Poly::zero)
                .terms
                .insert(m.clone(), c.clone());
        }
        out
    }

    /// Minimal filtration weight over the terms; `None` for the zero
    /// polynomial.
    pub fn filtration_degree(&self, ctx: &JetContext) -> Option<u32> {
        self.terms.keys().map(|m| m.filtration(ctx)).min()
    }

    /// Grassmann parity if homogeneous, `Err` otherwise.
    pub fn parity(&self, ctx: &JetContext) -> Result<Option<u8>> {
        let mut p = None;
        for m in self.terms.keys() {
            let mp = m.parity(ctx);
            match p {
                None => p = Some(mp),
                Some(q) if q != mp => {
                    return Err(BvError::Domain("polynomial has mixed parity".into()))
                }
                _ => {}
            }
        }
        Ok(p)
    }

    /// Ghost number if homogeneous, `Err` otherwise.
    pub fn ghost(&self, ctx: &JetContext) -> Result<Option<i32>> {
        let mut gh = None;
        for m in self.terms.keys() {
            let mg = m.ghost(ctx);
            match gh {
                None => gh = Some(mg),
                Some(q) if q != mg => {
                    return Err(BvError::Domain("polynomial has mixed ghost number".into()))
                }
                _ => {}
            }
        }
        Ok(gh)
    }

    pub fn max_jet_order(&self) -> u32 {
        self.terms.keys().map(|m| m.max_jet_order()).max().unwrap_or(0)
    }

    /// The part with no `u` factors.
    pub fn at_u_zero(&self) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.u_degree() == 0)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Coefficient polynomials of each `u`-monomial: the map sends the
    /// exponent vector of `(u^1, ..., u^n)` to the `u`-free coefficient.
    pub fn u_coefficients(&self, ctx: &JetContext) -> BTreeMap<Vec<u16>, Poly> {
        let mut out: BTreeMap<Vec<u16>, Poly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut key = vec![0u16; ctx.n];
            let mut rest = Vec::new();
            for (g, e) in &m.0 {
                match g {
                    Generator::U(i) => key[*i as usize] = *e,
                    _ => rest.push((g.clone(), *e)),
                }
            }
            // u's are even and sit at the end of the storage order, so no
            // sign is produced by stripping them.
            out.entry(key)
                .or_insert_with(Poly::zero)
                .terms
                .insert(Monomial(rest), c.clone());
        }
        out
    }

    /// Renders with `sig`/`eta` in front and the Koszul sign of the
    /// reordering folded into the coefficient. Deterministic: terms in
    /// canonical monomial order.
    pub fn render(&self, ctx: &JetContext) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (m, c) in &self.terms {
            let (sign, sigmas, eta, rest) = m.sigma_split(ctx);
            let mut coeff = c.clone();
            if sign < 0 {
                coeff = -coeff;
            }
            let mut factors: Vec<String> = Vec::new();
            for i in &sigmas {
                factors.push(format!("sig{}", i + 1));
            }
            if eta {
                factors.push("eta".to_string());
            }
            for (g, e) in &rest.0 {
                let base = ctx.render_generator(g);
                if *e == 1 {
                    factors.push(base);
                } else {
                    factors.push(format!("{base}^{e}"));
                }
            }
            if factors.is_empty() {
                parts.push(render_rational(&coeff));
            } else {
                parts.push(format!("{} * {}", render_rational(&coeff), factors.join("*")));
            }
        }
        parts.join(" + ")
    }

    /// JSON value: an array of `[coefficient, monomial]` pairs with string
    /// coefficients, in canonical order.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.terms
                .iter()
                .map(|(m, c)| {
                    serde_json::json!({
                        "c": render_rational(c),
                        "m": serde_json::to_value(m).expect("monomial serializes"),
                    })
                })
                .collect(),
        )
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Poly> {
        let arr = v
            .as_array()
            .ok_or_else(|| BvError::Parse("polynomial JSON must be an array".into()))?;
        let mut out = Poly::zero();
        for t in arr {
            let c = t
                .get("c")
                .ok_or_else(|| BvError::Parse("term missing `c`".into()))?;
            let m = t
                .get("m")
                .ok_or_else(|| BvError::Parse("term missing `m`".into()))?;
            let coeff = crate::rat::rational_from_json(c)?;
            let mono: Monomial = serde_json::from_value(m.clone())
                .map_err(|e| BvError::Parse(format!("bad monomial: {e}")))?;
            out.add_term(mono, coeff);
        }
        Ok(out)
    }
}

impl std::iter::Sum for Poly {
    fn sum<I: Iterator<Item = Poly>>(iter: I) -> Poly {
        let mut out = Poly::zero();
        for p in iter {
            out = out.add(&p);
        }
        out
    }
}
