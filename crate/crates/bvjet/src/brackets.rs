//! Density-level antibracket, Hamiltonian vector fields, the bracket
//! homotopy, the functional-level antibracket, and interior operators.
//!
//! All three kernels share the same structure: a sum over Darboux pairs with
//! the inverse pairing contracted between a field derivative on one side and
//! an antifield derivative on the other. Derivative handedness per side is a
//! convention frozen in [`conv`]; the freezing tests are the algebraic
//! anchors (graded antisymmetry, Jacobi, the known bracket values of the
//! Chern-Simons generators, the interior-operator identities, and the
//! intertwining residuals).

use crate::bicomplex::Functional;
use crate::context::JetContext;
use crate::generator::{Generator, JetVar};
use crate::jet::{antifield_degree, total_derivative_multi, variational_left, EvolutionaryVf};
use crate::monomial::Monomial;
use crate::multi_index::MultiIndex;
use crate::poly::Poly;
use crate::rat::Q;
use crate::Result;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::collections::BTreeMap;

/// Which side a partial derivative crosses the monomial from.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Handed {
    Left,
    Right,
}

/// Frozen sign and handedness conventions, fixed by the calibration tests
/// named in each comment. Changing any one of these breaks a named identity
/// in the test suite.
pub mod conv {
    use super::Handed;

    /// Antibracket kernel handedness (f side, g side). Frozen by the graded
    /// antisymmetry and Jacobi properties together with the known values
    /// of the brackets between the Chern-Simons action, its descent
    /// generators and the translation densities.
    pub const SOLOVIEV: (Handed, Handed) = (Handed::Left, Handed::Left);

    /// Handedness of the variational derivatives that form the Hamiltonian
    /// vector field's characteristic. Matching the antibracket handedness
    /// makes `X_f g - (f, g)` a total derivative for every pair, which the
    /// boundary identity under [`C`] requires exactly. Frozen by
    /// `X_{D_i} = -d_i`, by nilpotency of `X_S` for master actions `S`, and
    /// by the intertwining residuals.
    pub const X: Handed = Handed::Left;

    /// Bracket homotopy handedness. Left on both sides, matching the
    /// antibracket; the g side being left is also what makes `C(D_i, -)`
    /// the antifield-degree counter. Frozen by the same identities plus the
    /// boundary identity for sigma-free f,
    /// `d C(f,g) = (f,g) - X_f g + (-1)^{pa f} C(f, dg)`.
    pub const C: (Handed, Handed) = (Handed::Left, Handed::Left);

    /// `d` is a derivation of the antibracket with this parity shift:
    /// `d (f,g) = (df, g) + (-1)^{pa f + D_OVER_BRACKET_SHIFT} (f, dg)`.
    /// Frozen by a randomized property test.
    pub const D_OVER_BRACKET_SHIFT: u32 = 1;

    /// The functional antibracket sign uses the parity of the field side of
    /// each Darboux pair (not of the antifield side); frozen by agreement
    /// with the integrated density bracket.
    pub const BV_SIGN_USES_FIELD_PARITY: bool = true;
}

fn jet_partial(f: &Poly, v: JetVar, h: Handed, ctx: &JetContext) -> Poly {
    match h {
        Handed::Left => f.partial_left(&Generator::Jet(v), ctx),
        Handed::Right => f.partial_right(&Generator::Jet(v), ctx),
    }
}

/// Right variational derivative: `sum_alpha (-d)^alpha (dR/d z_alpha) f`.
pub fn variational_right(f: &Poly, slot: usize, comp: usize, ctx: &JetContext) -> Poly {
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
        let d = f.partial_right(
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

/// Multi-indices present in a jet monomial, grouped by (slot, comp).
fn jet_alphas(m: &Monomial) -> BTreeMap<(usize, usize), Vec<MultiIndex>> {
    let mut out: BTreeMap<(usize, usize), Vec<MultiIndex>> = BTreeMap::new();
    for (g, _) in &m.0 {
        if let Generator::Jet(v) = g {
            out.entry((v.slot as usize, v.comp as usize))
                .or_default()
                .push(v.alpha);
        }
    }
    out
}

/// Product `sig_I sig_J` as a polynomial (zero on overlap).
fn sigma_product(isig: &[u8], jsig: &[u8], ctx: &JetContext) -> Poly {
    let mut out = Poly::one();
    for i in isig.iter().chain(jsig.iter()) {
        out = out.mul(&Poly::from_gen(Generator::Sigma(*i)), ctx);
        if out.is_zero() {
            break;
        }
    }
    out
}

fn kappa_factor(ctx: &JetContext, x_slot: usize, a: usize, b: usize) -> Q {
    if ctx.field_of_slot(x_slot).lie_valued {
        ctx.kappa_inv(a, b).clone()
    } else if a == 0 && b == 0 {
        Q::one()
    } else {
        Q::zero()
    }
}

fn signed(p: Poly, exponent: u32) -> Poly {
    if exponent % 2 == 1 {
        p.neg()
    } else {
        p
    }
}

/// The density-level antibracket with explicit handedness (crate-internal;
/// the public entry point uses the frozen convention).
pub fn soloviev_with(f: &Poly, g: &Poly, ctx: &JetContext, hf: Handed, hg: Handed) -> Poly {
    let mut out = Poly::zero();
    for (mf, cf) in &f.terms {
        let (sf, fsig, feta, fjet) = mf.sigma_split(ctx);
        if feta {
            continue; // the corner line has no jet variables to pair
        }
        let fjp = Poly::from_mono(fjet.clone(), Q::one());
        let paf = fjet.parity(ctx) as u32;
        let f_alphas = jet_alphas(&fjet);
        for (mg, cg) in &g.terms {
            let (sg, gsig, geta, gjet) = mg.sigma_split(ctx);
            if geta {
                continue;
            }
            let sig_prod = sigma_product(&fsig, &gsig, ctx);
            if sig_prod.is_zero() {
                continue;
            }
            let gjp = Poly::from_mono(gjet.clone(), Q::one());
            let jn = gsig.len() as u32;
            let g_alphas = jet_alphas(&gjet);
            let mut acc = Poly::zero();
            for pair in &ctx.pairs {
                let pax = ctx.slot_parity(pair.x) as u32;
                let e1 = (paf + 1) * (pax + jn);
                let nc = ctx.comps(pair.x);
                for a in 0..nc {
                    for b in 0..nc {
                        let kab = kappa_factor(ctx, pair.x, a, b);
                        if kab.is_zero() {
                            continue;
                        }
                        // term 1: field derivative on f, antifield on g.
                        if let (Some(fa), Some(gb)) =
                            (f_alphas.get(&(pair.x, a)), g_alphas.get(&(pair.xi, b)))
                        {
                            for alpha in fa {
                                let d1 = jet_partial(
                                    &fjp,
                                    JetVar { slot: pair.x as u8, comp: a as u8, alpha: *alpha },
                                    hf,
                                    ctx,
                                );
                                if d1.is_zero() {
                                    continue;
                                }
                                for beta in gb {
                                    let d2 = jet_partial(
                                        &gjp,
                                        JetVar { slot: pair.xi as u8, comp: b as u8, alpha: *beta },
                                        hg,
                                        ctx,
                                    );
                                    if d2.is_zero() {
                                        continue;
                                    }
                                    let piece = total_derivative_multi(&d1, beta, ctx)
                                        .mul(&total_derivative_multi(&d2, alpha, ctx), ctx);
                                    acc = acc.add(&signed(piece, e1).scale(&kab));
                                }
                            }
                        }
                        // term 2: antifield derivative on f, field on g.
                        if let (Some(fb), Some(ga)) =
                            (f_alphas.get(&(pair.xi, b)), g_alphas.get(&(pair.x, a)))
                        {
                            for alpha in fb {
                                let d1 = jet_partial(
                                    &fjp,
                                    JetVar { slot: pair.xi as u8, comp: b as u8, alpha: *alpha },
                                    hf,
                                    ctx,
                                );
                                if d1.is_zero() {
                                    continue;
                                }
                                for beta in ga {
                                    let d2 = jet_partial(
                                        &gjp,
                                        JetVar { slot: pair.x as u8, comp: a as u8, alpha: *beta },
                                        hg,
                                        ctx,
                                    );
                                    if d2.is_zero() {
                                        continue;
                                    }
                                    let piece = total_derivative_multi(&d1, beta, ctx)
                                        .mul(&total_derivative_multi(&d2, alpha, ctx), ctx);
                                    acc = acc.add(&signed(piece, e1 + paf).scale(&kab));
                                }
                            }
                        }
                    }
                }
            }
            if acc.is_zero() {
                continue;
            }
            let mut coeff = cf.clone() * cg.clone();
            if sf * sg < 0 {
                coeff = -coeff;
            }
            out = out.add(&sig_prod.mul(&acc, ctx).scale(&coeff));
        }
    }
    out
}

/// The density-level antibracket (frozen convention).
pub fn soloviev(f: &Poly, g: &Poly, ctx: &JetContext) -> Poly {
    soloviev_with(f, g, ctx, conv::SOLOVIEV.0, conv::SOLOVIEV.1)
}

fn variational_with(f: &Poly, slot: usize, comp: usize, h: Handed, ctx: &JetContext) -> Poly {
    match h {
        Handed::Left => variational_left(f, slot, comp, ctx),
        Handed::Right => variational_right(f, slot, comp, ctx),
    }
}

/// The Hamiltonian vector field of `f` applied to `g`: the prolongation of
/// the assignment that sends each undifferentiated generator to the matching
/// variational derivative of `f` across its Darboux pair, acting through the
/// sigma prefix of `g` with the Koszul sign of the operator's parity. Being
/// a prolonged evolutionary field, it anticommutes with the horizontal
/// differential when `f` is even, and its failure to be the adjoint action
/// `(f, -)` is measured by the homotopy [`homotopy_c`].
pub fn apply_x_with(f: &Poly, g: &Poly, ctx: &JetContext, hf: Handed) -> Poly {
    let mut out = Poly::zero();
    for (mf, cf) in &f.terms {
        let (sf, fsig, feta, fjet) = mf.sigma_split(ctx);
        if feta {
            continue;
        }
        let fjp = Poly::from_mono(fjet.clone(), Q::one());
        let paf = fjet.parity(ctx) as u32;
        let mut vf = EvolutionaryVf::new();
        for pair in &ctx.pairs {
            let pax = ctx.slot_parity(pair.x) as u32;
            let nc = ctx.comps(pair.x);
            for a in 0..nc {
                let dx = variational_with(&fjp, pair.x, a, hf, ctx);
                for b in 0..nc {
                    let kab = kappa_factor(ctx, pair.x, a, b);
                    if kab.is_zero() {
                        continue;
                    }
                    if !dx.is_zero() {
                        vf = vf.assign(
                            pair.xi,
                            b,
                            signed(dx.scale(&kab), (paf + 1) * pax),
                        );
                    }
                    let dxi = variational_with(&fjp, pair.xi, b, hf, ctx);
                    if !dxi.is_zero() {
                        vf = vf.assign(
                            pair.x,
                            a,
                            signed(dxi.scale(&kab), (paf + 1) * pax + paf),
                        );
                    }
                }
            }
        }
        if vf.assignments.is_empty() {
            continue;
        }
        for (mg, cg) in &g.terms {
            let (sg, gsig, geta, gjet) = mg.sigma_split(ctx);
            if geta {
                continue;
            }
            let sig_prod = sigma_product(&fsig, &gsig, ctx);
            if sig_prod.is_zero() {
                continue;
            }
            let gjp = Poly::from_mono(gjet.clone(), Q::one());
            let jn = gsig.len() as u32;
            let acc = vf.apply(&gjp, ctx);
            if acc.is_zero() {
                continue;
            }
            let mut coeff = cf.clone() * cg.clone();
            if sf * sg < 0 {
                coeff = -coeff;
            }
            out = out.add(&signed(sig_prod.mul(&acc, ctx), (paf + 1) * jn).scale(&coeff));
        }
    }
    out
}

pub fn apply_x(f: &Poly, g: &Poly, ctx: &JetContext) -> Poly {
    apply_x_with(f, g, ctx, conv::X)
}

/// The bracket homotopy `C(f, g)`: raises the filtration weight by one and,
/// for sigma-free `f`, measures the difference between the adjoint action
/// and the Hamiltonian action through
/// `d C(f,g) = (f,g) - X_f g + (-1)^{pa f} C(f, dg)`.
pub fn homotopy_c_with(f: &Poly, g: &Poly, ctx: &JetContext, hf: Handed, hg: Handed) -> Poly {
    let mut out = Poly::zero();
    for (mf, cf) in &f.terms {
        let (sf, fsig, feta, fjet) = mf.sigma_split(ctx);
        if feta {
            continue;
        }
        let fjp = Poly::from_mono(fjet.clone(), Q::one());
        let paf = fjet.parity(ctx) as u32;
        let f_alphas = jet_alphas(&fjet);
        for (mg, cg) in &g.terms {
            let (sg, gsig, geta, gjet) = mg.sigma_split(ctx);
            if geta {
                continue;
            }
            let gjp = Poly::from_mono(gjet.clone(), Q::one());
            let jn = gsig.len() as u32;
            let g_alphas = jet_alphas(&gjet);
            let mut coeff = cf.clone() * cg.clone();
            if sf * sg < 0 {
                coeff = -coeff;
            }
            for pair in &ctx.pairs {
                let pax = ctx.slot_parity(pair.x) as u32;
                let e1 = (paf + 1) * (pax + jn);
                let nc = ctx.comps(pair.x);
                for a in 0..nc {
                    for b in 0..nc {
                        let kab = kappa_factor(ctx, pair.x, a, b);
                        if kab.is_zero() {
                            continue;
                        }
                        // (f side, g side, extra parity sign) for the two terms.
                        let sides = [
                            ((pair.x, a), (pair.xi, b), 0u32),
                            ((pair.xi, b), (pair.x, a), paf),
                        ];
                        for ((fslot, fcomp), (gslot, gcomp), extra) in sides {
                            let Some(fa) = f_alphas.get(&(fslot, fcomp)) else { continue };
                            let Some(gb) = g_alphas.get(&(gslot, gcomp)) else { continue };
                            for alpha in fa {
                                if alpha.is_zero() {
                                    continue; // gamma <= alpha, gamma > 0
                                }
                                let d1 = jet_partial(
                                    &fjp,
                                    JetVar { slot: fslot as u8, comp: fcomp as u8, alpha: *alpha },
                                    hf,
                                    ctx,
                                );
                                if d1.is_zero() {
                                    continue;
                                }
                                for beta in gb {
                                    let d2 = jet_partial(
                                        &gjp,
                                        JetVar { slot: gslot as u8, comp: gcomp as u8, alpha: *beta },
                                        hg,
                                        ctx,
                                    );
                                    if d2.is_zero() {
                                        continue;
                                    }
                                    let left = total_derivative_multi(&d1, beta, ctx);
                                    for gamma in alpha.sub_indices() {
                                        if gamma.is_zero() {
                                            continue;
                                        }
                                        let right = total_derivative_multi(
                                            &d2,
                                            &alpha.checked_sub(&gamma).expect("gamma <= alpha"),
                                            ctx,
                                        );
                                        let inner = left.mul(&right, ctx);
                                        if inner.is_zero() {
                                            continue;
                                        }
                                        let binom = alpha.binom(&gamma);
                                        for i in 0..ctx.n {
                                            if gamma.0[i] == 0 {
                                                continue;
                                            }
                                            let scale = Q::new(
                                                BigInt::from(gamma.0[i]) * binom.clone(),
                                                BigInt::from(gamma.order()),
                                            ) * kab.clone()
                                                * coeff.clone();
                                            // (-d)^{gamma - e_i} applied to the pairing.
                                            let mut spread = total_derivative_multi(
                                                &inner,
                                                &gamma
                                                    .checked_sub(&MultiIndex::unit(i))
                                                    .expect("gamma_i >= 1"),
                                                ctx,
                                            );
                                            if (gamma.order() - 1) % 2 == 1 {
                                                spread = spread.neg();
                                            }
                                            // sig_i sig_I sig_J in front.
                                            let mut front = Poly::from_gen(Generator::Sigma(i as u8));
                                            front = front.mul(&sigma_product(&fsig, &gsig, ctx), ctx);
                                            if front.is_zero() {
                                                continue;
                                            }
                                            let term = front.mul(&spread, ctx);
                                            out = out.add(&signed(term, e1 + extra).scale(&scale));
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

pub fn homotopy_c(f: &Poly, g: &Poly, ctx: &JetContext) -> Poly {
    homotopy_c_with(f, g, ctx, conv::C.0, conv::C.1)
}

/// The functional-level antibracket, defined directly through variational
/// derivatives so that integrating the density bracket agrees with it.
pub fn bv_antibracket(f: &Functional, g: &Functional, ctx: &JetContext) -> Result<Functional> {
    let mut out = Poly::zero();
    for (mf, cf) in &f.density.terms {
        let fh = Poly::from_mono(mf.clone(), cf.clone());
        let paf = mf.parity(ctx) as u32;
        for (mg, cg) in &g.density.terms {
            let gh = Poly::from_mono(mg.clone(), cg.clone());
            for pair in &ctx.pairs {
                let pconj = if conv::BV_SIGN_USES_FIELD_PARITY {
                    ctx.slot_parity(pair.x) as u32
                } else {
                    ctx.slot_parity(pair.xi) as u32
                };
                let e1 = (paf + 1) * pconj;
                let nc = ctx.comps(pair.x);
                for a in 0..nc {
                    for b in 0..nc {
                        let kab = kappa_factor(ctx, pair.x, a, b);
                        if kab.is_zero() {
                            continue;
                        }
                        let dxf = variational_left(&fh, pair.x, a, ctx);
                        if !dxf.is_zero() {
                            let dxig = variational_left(&gh, pair.xi, b, ctx);
                            if !dxig.is_zero() {
                                out = out.add(&signed(dxf.mul(&dxig, ctx), e1).scale(&kab));
                            }
                        }
                        let dxif = variational_left(&fh, pair.xi, b, ctx);
                        if !dxif.is_zero() {
                            let dxg = variational_left(&gh, pair.x, a, ctx);
                            if !dxg.is_zero() {
                                out = out
                                    .add(&signed(dxif.mul(&dxg, ctx), e1 + paf).scale(&kab));
                            }
                        }
                    }
                }
            }
        }
    }
    Functional::new(out, ctx)
}

/// The generic interior operator along direction `i`:
/// `sig_i (1 - antifield count)`.
pub fn iota_generic(i: usize, f: &Poly, ctx: &JetContext) -> Poly {
    let counted = antifield_degree(f, ctx);
    Poly::from_gen(Generator::Sigma(i as u8)).mul(&f.sub(&counted), ctx)
}
