//! Master-equation machinery: certificates for the flat and covariant
//! Maurer-Cartan equations, the homotopy lift of an action along the
//! filtration, interior-operator twists, and the intertwiner between the
//! adjoint and Hamiltonian differentials of a solution.

use crate::bicomplex::{homotopy_h, horizontal_d, is_total_derivative};
use crate::brackets::{apply_x, homotopy_c, soloviev};
use crate::context::JetContext;
use crate::generator::Generator;
use crate::poly::Poly;
use crate::rat::qr;
use crate::{BvError, Result};

/// An interior operator family `iota_i`, supplied by the theory
/// (the Chern-Simons module exports both the generic and the symmetric one).
pub type IotaFn<'a> = dyn Fn(usize, &Poly) -> Poly + 'a;

#[derive(Clone, Debug)]
pub struct MasterCertificate {
    pub residual: Poly,
    pub pass: bool,
}

impl MasterCertificate {
    fn from_residual(residual: Poly) -> Self {
        MasterCertificate { pass: residual.is_zero(), residual }
    }
}

/// Residual of the flat master equation `d S + 1/2 (S, S)`.
pub fn check_master(s: &Poly, ctx: &JetContext) -> MasterCertificate {
    let r = horizontal_d(s, ctx).add(&soloviev(s, s, ctx).scale(&qr(1, 2)));
    MasterCertificate::from_residual(r)
}

fn u_var(i: usize) -> Poly {
    Poly::from_gen(Generator::U(i as u8))
}

/// The covariant differential `d_u f = d f + sum_i u^i iota_i f`.
pub fn d_u(f: &Poly, ctx: &JetContext, iota: &IotaFn) -> Poly {
    let mut out = horizontal_d(f, ctx);
    for i in 0..ctx.n {
        let t = iota(i, f);
        if !t.is_zero() {
            out = out.add(&u_var(i).mul(&t, ctx));
        }
    }
    out
}

/// Residual of the covariant master equation
/// `d_u S_u + 1/2 (S_u, S_u) - sum_i u^i D_i`
/// against the supplied translation densities.
pub fn check_covariant_master(
    s_u: &Poly,
    translations: &[Poly],
    ctx: &JetContext,
    iota: &IotaFn,
) -> MasterCertificate {
    let mut r = d_u(s_u, ctx, iota).add(&soloviev(s_u, s_u, ctx).scale(&qr(1, 2)));
    for (i, d_i) in translations.iter().enumerate() {
        r = r.sub(&u_var(i).mul(d_i, ctx));
    }
    MasterCertificate::from_residual(r)
}

/// The component equations of an affine solution `S + u^i G_i`:
/// for each `i` the linear residual `d G_i + iota_i S + (S, G_i) - D_i`,
/// and for each pair `i <= j` the quadratic residual
/// `iota_i G_j + iota_j G_i + (G_i, G_j)`.
pub fn affine_residuals(
    s: &Poly,
    gs: &[Poly],
    translations: &[Poly],
    ctx: &JetContext,
    iota: &IotaFn,
) -> Vec<(String, Poly)> {
    let mut out = Vec::new();
    for (i, g_i) in gs.iter().enumerate() {
        let r = horizontal_d(g_i, ctx)
            .add(&iota(i, s))
            .add(&soloviev(s, g_i, ctx))
            .sub(&translations[i]);
        out.push((format!("linear_{}", i + 1), r));
    }
    for (i, g_i) in gs.iter().enumerate() {
        for (j, g_j) in gs.iter().enumerate().skip(i) {
            let r = iota(i, g_j).add(&iota(j, g_i)).add(&soloviev(g_i, g_j, ctx));
            out.push((format!("quadratic_{}{}", i + 1, j + 1), r));
        }
    }
    out
}

/// Split a polynomial by the number of horizontal symbols per term.
/// Rejects the corner symbol, which the master-equation machinery never
/// produces or consumes.
pub fn sigma_count_components(f: &Poly, ctx: &JetContext) -> Result<Vec<Poly>> {
    let mut out = vec![Poly::zero(); ctx.n + 1];
    for (m, c) in &f.terms {
        if m.has_eta() {
            return Err(BvError::Domain("corner symbol not allowed here".into()));
        }
        out[m.sigma_count() as usize].add_term(m.clone(), c.clone());
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct Lift {
    /// The graded pieces, `components[k]` carrying `k` horizontal symbols.
    pub components: Vec<Poly>,
    pub total: Poly,
    pub certificate: MasterCertificate,
}

/// Homotopy lift of a weight-zero action density along the filtration:
/// `S_0 = s0`, then `S_k = -1/2 sum_{j<k} H((S_j, S_{k-1-j}))`. Errors when
/// the integrated self-bracket of `s0` does not vanish; the returned
/// certificate re-checks the full master equation exactly.
pub fn lift_action(s0: &Poly, ctx: &JetContext) -> Result<Lift> {
    for m in s0.terms.keys() {
        if m.sigma_count() != 0 || m.has_eta() {
            return Err(BvError::Domain(
                "lift starts from a density without horizontal symbols".into(),
            ));
        }
    }
    let b00 = soloviev(s0, s0, ctx);
    if !is_total_derivative(&b00, ctx)? {
        return Err(BvError::Domain(
            "master-equation violation: the self-bracket of the seed is not a total derivative"
                .into(),
        ));
    }
    let mut components = vec![s0.clone()];
    for k in 1..=(ctx.n + 1) {
        let mut b = Poly::zero();
        for j in 0..k {
            b = b.add(&soloviev(&components[j], &components[k - 1 - j], ctx));
        }
        let s_k = homotopy_h(&b, ctx).scale(&qr(-1, 2));
        for m in s_k.terms.keys() {
            debug_assert_eq!(m.sigma_count() as usize, k, "filtration bookkeeping");
        }
        components.push(s_k);
    }
    let total: Poly = components.iter().fold(Poly::zero(), |acc, p| acc.add(p));
    let certificate = check_master(&total, ctx);
    Ok(Lift { components, total, certificate })
}

/// `Gamma_i = iota_i + ad(G_i)` for the supplied charges.
pub fn gamma_op(i: usize, f: &Poly, gs: &[Poly], ctx: &JetContext, iota: &IotaFn) -> Poly {
    iota(i, f).add(&soloviev(&gs[i], f, ctx))
}

/// The composite `Gamma = Gamma_1 Gamma_2 ... Gamma_n` (rightmost applied
/// first).
pub fn gamma_all(f: &Poly, gs: &[Poly], ctx: &JetContext, iota: &IotaFn) -> Poly {
    let mut out = f.clone();
    for i in (0..gs.len()).rev() {
        out = gamma_op(i, &out, gs, ctx, iota);
    }
    out
}

/// Twist a covariant solution by a cocycle: validates `s(rho) = 0` for the
/// `u = 0` action differential and the obstruction `(rho, Gamma rho) = 0`,
/// then returns `S_u + Gamma rho`.
pub fn aksz_twist(
    s_u: &Poly,
    rho: &Poly,
    gs: &[Poly],
    ctx: &JetContext,
    iota: &IotaFn,
) -> Result<Poly> {
    let s0 = s_u.at_u_zero();
    if !soloviev(&s0, rho, ctx).is_zero() {
        return Err(BvError::Domain(
            "twist input is not a cocycle for the action differential".into(),
        ));
    }
    let g_rho = gamma_all(rho, gs, ctx, iota);
    if !soloviev(rho, &g_rho, ctx).is_zero() {
        return Err(BvError::Domain(
            "twist obstruction (rho, Gamma rho) does not vanish".into(),
        ));
    }
    Ok(s_u.add(&g_rho))
}

/// The intertwiner between the adjoint differential `d + (S, -)` and its
/// conjugate `d + stilde`: `alpha(f) = f + C(S_0, f) + higher`, built level
/// by level in the horizontal-symbol filtration. At each level the next
/// correction is `alpha_k = -H(known part)` and the twisted sector
/// [`twisted_sector`] absorbs the remainder, so the conjugation relation
/// holds exactly degree by degree. The leading twisted sector is the
/// Hamiltonian vector field of the symbol-free action component (the
/// bracket homotopy identity makes that an equality, not a definition),
/// and for a symbol-free action the higher corrections vanish and `alpha`
/// reduces to the exponential intertwiner of the translation fields.
pub fn alpha_intertwiner(s: &Poly, f: &Poly, ctx: &JetContext) -> Result<Poly> {
    let comps = sigma_count_components(s, ctx)?;
    let mut out = f.clone();
    for k in 1..=ctx.n {
        out = out.add(&alpha_k(k, f, &comps, ctx));
    }
    Ok(out)
}

/// The level-`k` piece of the intertwiner; raises the horizontal-symbol
/// count by exactly `k`, so levels above the symbol dimension vanish.
pub fn alpha_k(k: usize, g: &Poly, s_comps: &[Poly], ctx: &JetContext) -> Poly {
    match k {
        0 => g.clone(),
        1 => homotopy_c(&s_comps[0], g, ctx),
        _ if k > s_comps.len() - 1 => Poly::zero(),
        _ => homotopy_h(&known_part(k - 1, g, s_comps, ctx), ctx).neg(),
    }
}

/// The part of the level-`k` conjugation defect that is already determined
/// by lower levels: `sum_{j=1..k} (stilde_{k-j} alpha_j - alpha_j (S_{k-j}, -))
/// - (S_k, -)`, applied to `g`.
fn known_part(k: usize, g: &Poly, s_comps: &[Poly], ctx: &JetContext) -> Poly {
    let mut b = soloviev(&s_comps[k], g, ctx).neg();
    for j in 1..=k {
        let aj = alpha_k(j, g, s_comps, ctx);
        b = b.add(&twisted_sector(k - j, &aj, s_comps, ctx));
        let sg = soloviev(&s_comps[k - j], g, ctx);
        b = b.sub(&alpha_k(j, &sg, s_comps, ctx));
    }
    b
}

/// Sector `k` of the conjugated odd vector field `stilde = alpha (d + (S,-))
/// alpha^{-1} - d`; raises the horizontal-symbol count by exactly `k`.
///
/// Sector 0 equals the Hamiltonian vector field of the symbol-free action
/// component. Each higher sector is the remainder the level-`k` relation
/// assigns once `alpha_{k+1}` is chosen:
/// `stilde_k = (S_k, -) - known corrections - [d, alpha_{k+1}]`. Because
/// every operator involved shifts the symbol count homogeneously, the
/// conjugation relation then holds in every degree and `(d + stilde)^2 = 0`.
pub fn twisted_sector(k: usize, g: &Poly, s_comps: &[Poly], ctx: &JetContext) -> Poly {
    if k == 0 {
        return apply_x(&s_comps[0], g, ctx);
    }
    let mut out = known_part(k, g, s_comps, ctx).neg();
    let a_next = alpha_k(k + 1, g, s_comps, ctx);
    out = out.sub(&horizontal_d(&a_next, ctx));
    out.add(&alpha_k(k + 1, &horizontal_d(g, ctx), s_comps, ctx))
}

/// The full conjugated field `stilde` applied to `g`: the sum of
/// [`twisted_sector`] over all levels.
pub fn twisted_action(g: &Poly, s_comps: &[Poly], ctx: &JetContext) -> Poly {
    let mut out = Poly::zero();
    for k in 0..s_comps.len() {
        out = out.add(&twisted_sector(k, g, s_comps, ctx));
    }
    out
}

/// Residual of the intertwining identity
/// `(d + stilde) alpha(f) - alpha((d + (S, -)) f)`; exactly zero when `S`
/// solves the master equation and the conventions are coherent.
pub fn alpha_residual(s: &Poly, f: &Poly, ctx: &JetContext) -> Result<Poly> {
    let comps = sigma_count_components(s, ctx)?;
    let af = alpha_intertwiner(s, f, ctx)?;
    let lhs = horizontal_d(&af, ctx).add(&twisted_action(&af, &comps, ctx));
    let df = horizontal_d(f, ctx).add(&soloviev(s, f, ctx));
    let rhs = alpha_intertwiner(s, &df, ctx)?;
    Ok(lhs.sub(&rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::context::FieldDescriptor;
    use crate::generator::Generator;
    use crate::lie::LieAlgebra;
    use crate::multi_index::MultiIndex;

    fn pair_ctx(n: usize, dim: usize) -> JetContext {
        let lie = LieAlgebra::abelian(dim, "ab").unwrap();
        JetContext::new(
            n,
            vec![
                FieldDescriptor { name: "x".into(), ghost: 0, parity: 0, st_indexed: false, lie_valued: true, antifield_of: None },
                FieldDescriptor { name: "xi".into(), ghost: -1, parity: 1, st_indexed: false, lie_valued: true, antifield_of: Some(0) },
            ],
            lie,
        )
        .unwrap()
    }

    fn gen(slot: u8, comp: u8, alpha: MultiIndex) -> Poly {
        Poly::from_gen(Generator::jet(slot, comp, alpha))
    }

    #[test]
    fn toy_translation_density_lifts_trivially() {
        // The self-bracket of <xi, d_1 x> vanishes, so the lift is the seed.
        let c = pair_ctx(1, 1);
        let s0 = gen(0, 0, MultiIndex::unit(0)).mul(&gen(1, 0, MultiIndex::zero()), &c);
        let lift = lift_action(&s0, &c).unwrap();
        assert!(lift.certificate.pass);
        assert_eq!(lift.total, s0);
        for comp in &lift.components[1..] {
            assert!(comp.is_zero());
        }
    }

    // Even density x x_1 xi xi_1; its self-bracket is nonzero and fails the
    // variational-derivative test, so it seeds the failure paths below.
    fn obstructed_density(c: &JetContext) -> Poly {
        let e = MultiIndex::unit(0);
        gen(0, 0, MultiIndex::zero())
            .mul(&gen(0, 0, e), c)
            .mul(&gen(1, 0, MultiIndex::zero()), c)
            .mul(&gen(1, 0, e), c)
    }

    #[test]
    fn lift_rejects_a_seed_with_obstructed_self_bracket() {
        let c = pair_ctx(1, 1);
        let s0 = obstructed_density(&c);
        assert!(!s0.is_zero());
        let err = lift_action(&s0, &c).unwrap_err();
        assert!(err.to_string().contains("master-equation violation"));
    }

    #[test]
    fn check_master_flags_a_broken_action() {
        let c = pair_ctx(1, 1);
        let good = gen(0, 0, MultiIndex::unit(0)).mul(&gen(1, 0, MultiIndex::zero()), &c);
        assert!(check_master(&good, &c).pass);
        let cert = check_master(&obstructed_density(&c), &c);
        assert!(!cert.pass);
        assert!(!cert.residual.is_zero());
    }

    #[test]
    fn covariant_check_at_u_zero_matches_plain_check() {
        let c = pair_ctx(1, 1);
        let iota = |_i: usize, _f: &Poly| Poly::zero();
        let s = gen(0, 0, MultiIndex::unit(0)).mul(&gen(1, 0, MultiIndex::zero()), &c);
        let plain = check_master(&s, &c);
        let cov = check_covariant_master(&s, &[Poly::zero()], &c, &iota);
        assert_eq!(plain.residual.at_u_zero(), cov.residual.at_u_zero());
        assert!(cov.pass);
    }

    #[test]
    fn alpha_of_a_constant_is_the_constant() {
        let c = pair_ctx(1, 1);
        let s = gen(0, 0, MultiIndex::unit(0)).mul(&gen(1, 0, MultiIndex::zero()), &c);
        let f = Poly::constant(crate::rat::q(5));
        assert_eq!(alpha_intertwiner(&s, &f, &c).unwrap(), f);
        assert!(alpha_residual(&s, &f, &c).unwrap().is_zero());
    }

    #[test]
    fn alpha_intertwines_for_a_toy_even_action() {
        // S = x xi xi_1 is even, sigma-free, and solves dS + (S,S)/2 = 0
        // exactly, so the recursion must close the intertwining square.
        let c = pair_ctx(1, 1);
        let e = MultiIndex::unit(0);
        let s = gen(0, 0, MultiIndex::zero())
            .mul(&gen(1, 0, MultiIndex::zero()), &c)
            .mul(&gen(1, 0, e), &c);
        assert!(check_master(&s, &c).pass);
        let samples = [
            gen(1, 0, MultiIndex::zero()),
            gen(0, 0, e),
            gen(0, 0, e.add(&e)),
            gen(1, 0, e.add(&e)),
            gen(0, 0, MultiIndex::zero()).mul(&gen(1, 0, e), &c),
            gen(0, 0, MultiIndex::zero()).mul(&gen(0, 0, e), &c),
            gen(1, 0, MultiIndex::zero()).mul(&gen(1, 0, e), &c),
            Poly::from_gen(Generator::Sigma(0)).mul(&gen(0, 0, MultiIndex::zero()), &c),
            Poly::from_gen(Generator::Sigma(0)).mul(&gen(1, 0, e), &c),
            Poly::from_gen(Generator::Sigma(0))
                .mul(&gen(0, 0, e), &c)
                .mul(&gen(1, 0, MultiIndex::zero()), &c),
        ];
        for f in &samples {
            let r = alpha_residual(&s, f, &c).unwrap();
            assert!(r.is_zero(), "f = {} residual = {}", f.render(&c), r.render(&c));
        }
    }

    #[test]
    fn hamiltonian_field_of_a_master_action_squares_to_zero() {
        // For an exact master solution the Hamiltonian field is a
        // differential anticommuting with the horizontal one; both facts are
        // what the intertwining recursion leans on.
        let c = pair_ctx(1, 1);
        let e = MultiIndex::unit(0);
        let s = gen(0, 0, MultiIndex::zero())
            .mul(&gen(1, 0, MultiIndex::zero()), &c)
            .mul(&gen(1, 0, e), &c);
        let probes = [
            gen(0, 0, MultiIndex::zero()),
            gen(1, 0, MultiIndex::zero()),
            gen(0, 0, e),
            gen(1, 0, e),
            gen(0, 0, MultiIndex::zero()).mul(&gen(1, 0, e), &c),
            Poly::from_gen(Generator::Sigma(0)).mul(&gen(0, 0, e), &c),
        ];
        for g in &probes {
            let xx = apply_x(&s, &apply_x(&s, g, &c), &c);
            assert!(xx.is_zero(), "X^2 g = {}", xx.render(&c));
            let anti = horizontal_d(&apply_x(&s, g, &c), &c)
                .add(&apply_x(&s, &horizontal_d(g, &c), &c));
            assert!(anti.is_zero(), "{{d, X}} g = {}", anti.render(&c));
        }
    }
}
