//! Named verification suites: batches of exact identity checks over a
//! chosen Lie algebra, reported in a machine-readable, deterministic form.
//!
//! Random elements are drawn through [`crate::sample::Sampler`] before any
//! evaluation starts, so a fixed seed produces the same report whether the
//! checks run sequentially or in parallel.

use crate::bicomplex::{homotopy_h, horizontal_d, projection_p, Functional};
use crate::brackets::{apply_x, bv_antibracket, homotopy_c, soloviev};
use crate::ce::{
    basis_masks, ce_cubic, ce_differential, cocycle_basis, cohomology, invariants,
    shifted_poisson, CeElt,
};
use crate::context::JetContext;
use crate::cs::{
    build_cs_context, bv_cocycle_from_ce, c_plus_slot, c_slot, ce_to_ghost_poly,
    cs3_nonabelian, d_i_symmetric, g_all, gamma_ghost_poly, gamma_rho_comparison,
    gamma_rho_explicit, induced_bracket_check, iota_cs, pair_vec, pi, rho,
    standard_antifield_terms, verify_alpha_abelian,
};
use crate::generator::Generator;
use crate::jet::total_derivative;
use crate::lie::LieAlgebra;
use crate::master::{
    affine_residuals, aksz_twist, alpha_intertwiner, alpha_residual, check_covariant_master,
    check_master, gamma_all, gamma_op, lift_action, sigma_count_components, twisted_action,
};
use crate::monomial::Monomial;
use crate::multi_index::MultiIndex;
use crate::par::{pmap, ExecMode};
use crate::poly::Poly;
use crate::rat::{qr, sign_pow};
use crate::report::{CheckItem, VerificationReport};
use crate::sample::Sampler;
use crate::sympoly::{
    invariance_defect, pairing_quadratic, trace_polynomial, transgression, transgression_direct,
};
use crate::{BvError, Result};
use std::time::Instant;

/// The named verification suites; `all` at the command line expands to
/// every entry of [`Suite::ALL`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Brackets,
    Poincare,
    AbelianCs,
    NonabelianCs,
    Covariant,
    Alpha,
    Appendix,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::Brackets,
        Suite::Poincare,
        Suite::AbelianCs,
        Suite::NonabelianCs,
        Suite::Covariant,
        Suite::Alpha,
        Suite::Appendix,
    ];

    pub fn parse(name: &str) -> Option<Suite> {
        match name {
            "brackets" => Some(Suite::Brackets),
            "poincare" => Some(Suite::Poincare),
            "abelian-cs" => Some(Suite::AbelianCs),
            "nonabelian-cs" => Some(Suite::NonabelianCs),
            "covariant" => Some(Suite::Covariant),
            "alpha" => Some(Suite::Alpha),
            "appendix" => Some(Suite::Appendix),
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Suite::Brackets => "brackets",
            Suite::Poincare => "poincare",
            Suite::AbelianCs => "abelian-cs",
            Suite::NonabelianCs => "nonabelian-cs",
            Suite::Covariant => "covariant",
            Suite::Alpha => "alpha",
            Suite::Appendix => "appendix",
        }
    }

    /// The built-in algebra used when the caller names none.
    pub fn default_algebra(&self) -> &'static str {
        match self {
            Suite::AbelianCs => "abelian3",
            _ => "sl2",
        }
    }
}

/// Outcome of one check before it is stamped with name and anchor.
struct Outcome {
    pass: bool,
    residual_terms: usize,
    detail: Option<String>,
}

impl Outcome {
    fn from_poly(r: &Poly, ctx: &JetContext) -> Outcome {
        if r.is_zero() {
            Outcome { pass: true, residual_terms: 0, detail: None }
        } else {
            Outcome {
                pass: false,
                residual_terms: r.terms.len(),
                detail: Some(clip(r.render(ctx))),
            }
        }
    }

    fn from_bool(ok: bool, detail_on_fail: String) -> Outcome {
        Outcome {
            pass: ok,
            residual_terms: usize::from(!ok),
            detail: if ok { None } else { Some(clip(detail_on_fail)) },
        }
    }

    /// Sum of residuals from many trials; the detail quotes the first
    /// failing one.
    fn from_trials(residuals: &[Poly], ctx: &JetContext) -> Outcome {
        let terms: usize = residuals.iter().map(|r| r.terms.len()).sum();
        match residuals.iter().position(|r| !r.is_zero()) {
            None => Outcome { pass: true, residual_terms: 0, detail: None },
            Some(i) => Outcome {
                pass: false,
                residual_terms: terms,
                detail: Some(clip(format!("trial {}: {}", i, residuals[i].render(ctx)))),
            },
        }
    }
}

fn clip(s: String) -> String {
    const LIMIT: usize = 480;
    if s.len() <= LIMIT {
        return s;
    }
    let mut cut = LIMIT;
    while !s.is_char_boundary(cut) {
        cut -= 1;
    }
    format!("{}... ({} more bytes)", &s[..cut], s.len() - cut)
}

struct Checker {
    items: Vec<CheckItem>,
}

impl Checker {
    fn new() -> Checker {
        Checker { items: Vec::new() }
    }

    fn run(&mut self, name: &str, anchor: &str, f: impl FnOnce() -> Result<Outcome>) -> Result<()> {
        let start = Instant::now();
        let outcome = f()?;
        let wall_ms = start.elapsed().as_millis() as u64;
        self.items.push(CheckItem {
            name: name.into(),
            anchor: anchor.into(),
            pass: outcome.pass,
            residual_terms: outcome.residual_terms,
            detail: outcome.detail,
            wall_ms: Some(wall_ms),
        });
        Ok(())
    }
}

/// Keep only the monomials `keep` accepts.
fn monomial_filter(f: &Poly, keep: impl Fn(&Monomial) -> bool) -> Poly {
    let mut out = Poly::zero();
    for (m, c) in &f.terms {
        if keep(m) {
            out = out.add(&Poly::from_mono(m.clone(), c.clone()));
        }
    }
    out
}

/// Nonzero sample whose monomials all satisfy `keep`.
fn filtered_sample(
    smp: &mut Sampler,
    ctx: &JetContext,
    with_sigma: bool,
    keep: impl Fn(&Monomial) -> bool,
) -> Poly {
    for _ in 0..1000 {
        let p = monomial_filter(&smp.poly(ctx, 3, with_sigma), &keep);
        if !p.is_zero() {
            return p;
        }
    }
    panic!("filtered sampling stalled");
}

fn u_times(i: usize, g: &Poly, ctx: &JetContext) -> Poly {
    Poly::from_gen(Generator::U(i as u8)).mul(g, ctx)
}

fn affine_action(p: &Poly, gs: &[Poly], ctx: &JetContext) -> Poly {
    let mut s_u = p.clone();
    for (i, g) in gs.iter().enumerate() {
        s_u = s_u.add(&u_times(i, g, ctx));
    }
    s_u
}

/// Runs one suite over `lie`. The report is unsorted and carries wall
/// times; callers normalize through [`VerificationReport::finish`].
pub fn run_suite(
    suite: Suite,
    lie: &LieAlgebra,
    seed: u64,
    mode: ExecMode,
) -> Result<VerificationReport> {
    let mut report = VerificationReport::new(suite.name(), &lie.name, seed);
    let mut checker = Checker::new();
    match suite {
        Suite::Brackets => suite_brackets(lie, seed, mode, &mut checker)?,
        Suite::Poincare => suite_poincare(lie, seed, mode, &mut checker)?,
        Suite::AbelianCs => suite_abelian_cs(lie, seed, mode, &mut checker)?,
        Suite::NonabelianCs => suite_nonabelian_cs(lie, seed, mode, &mut checker)?,
        Suite::Covariant => suite_covariant(lie, seed, mode, &mut checker)?,
        Suite::Alpha => suite_alpha(lie, seed, mode, &mut checker)?,
        Suite::Appendix => suite_appendix(lie, seed, mode, &mut checker)?,
    }
    for item in checker.items {
        report.push(item);
    }
    Ok(report)
}

/// Graded antisymmetry, graded Jacobi, the Leibniz compatibility with the
/// horizontal differential, and agreement of the density bracket with the
/// functional antibracket.
fn suite_brackets(lie: &LieAlgebra, seed: u64, mode: ExecMode, out: &mut Checker) -> Result<()> {
    let ctx = build_cs_context(lie.clone())?;
    let mut smp = Sampler::new(seed, 1, 2);
    let triples: Vec<(Poly, u8, Poly, u8, Poly, u8)> = (0..50)
        .map(|t| {
            let pf = (t & 1) as u8;
            let pg = ((t >> 1) & 1) as u8;
            let ph = ((t >> 2) & 1) as u8;
            (
                smp.homogeneous(&ctx, pf, 2),
                pf,
                smp.homogeneous(&ctx, pg, 2),
                pg,
                smp.homogeneous(&ctx, ph, 2),
                ph,
            )
        })
        .collect();

    out.run(
        "antisymmetry",
        "(f,g) = -(-1)^{(pf+1)(pg+1)} (g,f) on 50 random homogeneous pairs",
        || {
            let rs = pmap(mode, &triples, |(f, pf, g, pg, _, _)| {
                let sign = sign_pow(u32::from((pf + 1) * (pg + 1)));
                soloviev(f, g, &ctx).add(&soloviev(g, f, &ctx).scale(&sign))
            });
            Ok(Outcome::from_trials(&rs, &ctx))
        },
    )?;

    out.run(
        "jacobi",
        "cyclic sum of (-1)^{(pf+1)(ph+1)} (f,(g,h)) vanishes on 50 random triples",
        || {
            let rs = pmap(mode, &triples, |(f, pf, g, pg, h, ph)| {
                let t1 = soloviev(f, &soloviev(g, h, &ctx), &ctx)
                    .scale(&sign_pow(u32::from((pf + 1) * (ph + 1))));
                let t2 = soloviev(g, &soloviev(h, f, &ctx), &ctx)
                    .scale(&sign_pow(u32::from((pg + 1) * (pf + 1))));
                let t3 = soloviev(h, &soloviev(f, g, &ctx), &ctx)
                    .scale(&sign_pow(u32::from((ph + 1) * (pg + 1))));
                t1.add(&t2).add(&t3)
            });
            Ok(Outcome::from_trials(&rs, &ctx))
        },
    )?;

    out.run(
        "differential_leibniz",
        "d(f,g) = (df,g) + (-1)^{pf+1} (f,dg) on 50 random homogeneous pairs",
        || {
            let rs = pmap(mode, &triples, |(f, pf, g, _, _, _)| {
                let lhs = horizontal_d(&soloviev(f, g, &ctx), &ctx);
                let rhs = soloviev(&horizontal_d(f, &ctx), g, &ctx).add(
                    &soloviev(f, &horizontal_d(g, &ctx), &ctx)
                        .scale(&sign_pow(u32::from(pf + 1))),
                );
                lhs.sub(&rhs)
            });
            Ok(Outcome::from_trials(&rs, &ctx))
        },
    )?;

    // Symbol-free densities for the functional comparison; both sides are
    // bilinear, so parity homogeneity is not needed here.
    let pairs: Vec<(Poly, Poly)> = (0..30)
        .map(|_| (smp.nonzero_poly(&ctx, 2, false), smp.nonzero_poly(&ctx, 2, false)))
        .collect();
    out.run(
        "functional_antibracket",
        "the integral of (f,g) equals the antibracket of the integrals on 30 pairs",
        || {
            let rs = pmap(mode, &pairs, |(f, g)| -> Result<bool> {
                let lhs = Functional::new(soloviev(f, g, &ctx), &ctx)?;
                let rhs =
                    bv_antibracket(&Functional::new(f.clone(), &ctx)?, &Functional::new(g.clone(), &ctx)?, &ctx)?;
                lhs.eq(&rhs, &ctx)
            });
            let mut first_bad = None;
            let mut all = true;
            for (i, r) in rs.into_iter().enumerate() {
                if !r? {
                    all = false;
                    first_bad.get_or_insert(i);
                }
            }
            Ok(Outcome::from_bool(
                all,
                format!("first disagreeing pair: trial {:?}", first_bad),
            ))
        },
    )?;
    Ok(())
}

/// The horizontal complex: nilpotence of d, the contracting homotopy on
/// positive filtration weight, the weight-zero identity against the
/// integral projection, and the corner line.
fn suite_poincare(lie: &LieAlgebra, seed: u64, mode: ExecMode, out: &mut Checker) -> Result<()> {
    let ctx = build_cs_context(lie.clone())?;
    let mut smp = Sampler::new(seed, 2, 3);

    let frees: Vec<Poly> = (0..30).map(|_| smp.nonzero_poly(&ctx, 3, true)).collect();
    out.run("d_squared", "d(d f) = 0 on 30 random elements", || {
        let rs = pmap(mode, &frees, |f| horizontal_d(&horizontal_d(f, &ctx), &ctx));
        Ok(Outcome::from_trials(&rs, &ctx))
    })?;

    let weighted: Vec<Poly> = (0..30)
        .map(|_| {
            filtered_sample(&mut smp, &ctx, true, |m| {
                m.sigma_count() >= 1 && !m.has_eta() && m.field_degree() >= 1
            })
        })
        .collect();
    out.run(
        "homotopy_positive_weight",
        "(dH + Hd)f = f on 30 elements of positive weight and field degree",
        || {
            let rs = pmap(mode, &weighted, |f| {
                horizontal_d(&homotopy_h(f, &ctx), &ctx)
                    .add(&homotopy_h(&horizontal_d(f, &ctx), &ctx))
                    .sub(f)
            });
            Ok(Outcome::from_trials(&rs, &ctx))
        },
    )?;

    let densities: Vec<Poly> = (0..30)
        .map(|_| {
            filtered_sample(&mut smp, &ctx, false, |m| {
                m.sigma_count() == 0 && !m.has_eta() && m.field_degree() >= 1
            })
        })
        .collect();
    out.run(
        "homotopy_weight_zero",
        "(dH + P\u{222b})f = f on 30 symbol-free densities of positive field degree",
        || {
            let rs: Vec<Result<Poly>> = pmap(mode, &densities, |f| {
                Ok(horizontal_d(&homotopy_h(f, &ctx), &ctx).add(&projection_p(f, &ctx)?).sub(f))
            });
            let rs = rs.into_iter().collect::<Result<Vec<Poly>>>()?;
            Ok(Outcome::from_trials(&rs, &ctx))
        },
    )?;

    out.run("corner_homotopy", "H maps the corner symbol to the full symbol product", || {
        let eta = Poly::from_gen(Generator::Eta);
        let mut sss = Poly::constant(crate::rat::q(1));
        for i in 0..ctx.n {
            sss = sss.mul(&Poly::from_gen(Generator::Sigma(i as u8)), &ctx);
        }
        Ok(Outcome::from_poly(&homotopy_h(&eta, &ctx).sub(&sss), &ctx))
    })?;
    Ok(())
}

/// The free theory over an abelian algebra: master equation, charge
/// algebra, covariance of the affine action, translation fields, and the
/// exponential intertwiner.
fn suite_abelian_cs(lie: &LieAlgebra, seed: u64, mode: ExecMode, out: &mut Checker) -> Result<()> {
    if !lie.is_abelian() {
        return Err(BvError::Domain(format!(
            "suite abelian-cs needs an abelian algebra, `{}` is not",
            lie.name
        )));
    }
    let ctx = build_cs_context(lie.clone())?;
    let p = pi(&ctx);
    let gs = g_all(&ctx);
    let ds: Vec<Poly> = (0..3).map(|i| d_i_symmetric(&ctx, i)).collect();
    let iota = |i: usize, f: &Poly| iota_cs(i, f, &ctx);

    out.run("master_functional", "the integral of (pi,pi)/2 vanishes", || {
        let half = soloviev(&p, &p, &ctx).scale(&qr(1, 2));
        Ok(Outcome::from_bool(
            Functional::new(half.clone(), &ctx)?.is_zero(&ctx)?,
            half.render(&ctx),
        ))
    })?;

    out.run(
        "charge_brackets",
        "(pi, G_i) equals the symmetric translation density for each i",
        || {
            let mut r = Poly::zero();
            for i in 0..3 {
                r = r.add(&soloviev(&p, &gs[i], &ctx).sub(&ds[i]));
            }
            Ok(Outcome::from_poly(&r, &ctx))
        },
    )?;

    out.run("charges_commute", "(G_i, G_j) = 0 for all nine pairs", || {
        let mut r = Poly::zero();
        for gi in &gs {
            for gj in &gs {
                r = r.add(&soloviev(gi, gj, &ctx));
            }
        }
        Ok(Outcome::from_poly(&r, &ctx))
    })?;

    out.run(
        "closed_and_interior_trivial",
        "d pi = d G_i = iota_i pi = iota_i G_j = 0",
        || {
            let mut r = horizontal_d(&p, &ctx);
            for i in 0..3 {
                r = r.add(&horizontal_d(&gs[i], &ctx)).add(&iota_cs(i, &p, &ctx));
                for g in &gs {
                    r = r.add(&iota_cs(i, g, &ctx));
                }
            }
            Ok(Outcome::from_poly(&r, &ctx))
        },
    )?;

    out.run(
        "covariant_affine",
        "pi + u^i G_i satisfies the covariant master equation, component by component",
        || {
            let mut r = check_covariant_master(&affine_action(&p, &gs, &ctx), &ds, &ctx, &iota)
                .residual;
            for (_, comp) in affine_residuals(&p, &gs, &ds, &ctx, &iota) {
                r = r.add(&comp);
            }
            Ok(Outcome::from_poly(&r, &ctx))
        },
    )?;

    out.run(
        "translation_fields",
        "the Hamiltonian field of D_i is -d/dx^i on the jet basis through order 2",
        || {
            let mut r = Poly::zero();
            for i in 0..3 {
                for slot in 0..ctx.slots.len() {
                    for comp in 0..ctx.comps(slot) {
                        for alpha in MultiIndex::all_up_to_order(ctx.n, 2) {
                            let z = Poly::from_gen(Generator::jet(
                                slot as u8,
                                comp as u8,
                                alpha,
                            ));
                            r = r.add(&apply_x(&ds[i], &z, &ctx).add(&total_derivative(
                                &z, i, &ctx,
                            )));
                        }
                    }
                }
            }
            Ok(Outcome::from_poly(&r, &ctx))
        },
    )?;

    let mut smp = Sampler::new(seed, 1, 2);
    let samples: Vec<Poly> = (0..20).map(|_| smp.nonzero_poly(&ctx, 3, true)).collect();
    out.run(
        "exponential_intertwiner",
        "exp(sigma_i f^i) carries d + X_pi to d + (pi,-) on 20 random elements",
        || {
            let rs = pmap(mode, &samples, |h| verify_alpha_abelian(h, &ctx));
            Ok(Outcome::from_trials(&rs, &ctx))
        },
    )?;
    Ok(())
}

/// The interacting theory: the ghost cubic, its descent, the twisted
/// covariant action, the expansion report, and the induced bracket.
fn suite_nonabelian_cs(
    lie: &LieAlgebra,
    _seed: u64,
    mode: ExecMode,
    out: &mut Checker,
) -> Result<()> {
    if lie.is_abelian() {
        return Err(BvError::Domain(format!(
            "suite nonabelian-cs needs a nonabelian algebra, `{}` is abelian",
            lie.name
        )));
    }
    let ctx = build_cs_context(lie.clone())?;
    let p = pi(&ctx);
    let gs = g_all(&ctx);
    let ds: Vec<Poly> = (0..3).map(|i| d_i_symmetric(&ctx, i)).collect();
    let iota = |i: usize, f: &Poly| iota_cs(i, f, &ctx);
    let r = rho(&ctx);
    let gr = gamma_all(&r, &gs, &ctx, &iota);

    out.run("free_differential_kills_cubic", "d rho = 0 and (pi, rho) = 0", || {
        Ok(Outcome::from_poly(
            &horizontal_d(&r, &ctx).add(&soloviev(&p, &r, &ctx)),
            &ctx,
        ))
    })?;

    out.run("twist_obstruction", "(rho, Gamma rho) = 0", || {
        Ok(Outcome::from_poly(&soloviev(&r, &gr, &ctx), &ctx))
    })?;

    out.run(
        "two_path_descent",
        "the operator composite agrees with the closed form on every basis cochain",
        || {
            let masks: Vec<u32> = (0..=lie.dim as u32)
                .flat_map(|k| basis_masks(lie.dim, k))
                .collect();
            let rs = pmap(mode, &masks, |mask| {
                let mut x = CeElt::zero();
                x.add_term(*mask, crate::rat::q(1));
                let f = ce_to_ghost_poly(&x, &ctx);
                gamma_all(&f, &gs, &ctx, &iota).sub(&gamma_ghost_poly(&f, &ctx))
            });
            Ok(Outcome::from_trials(&rs, &ctx))
        },
    )?;

    out.run(
        "explicit_expansion",
        "the descent of the ghost cubic matches its hand expansion term by term",
        || Ok(Outcome::from_poly(&gr.sub(&gamma_rho_explicit(&ctx)), &ctx)),
    )?;

    out.run(
        "expansion_sign_report",
        "the even symbol sectors of the expansion negate the sign variant; the odd ones agree",
        || {
            let rows = gamma_rho_comparison(&ctx);
            let mut pattern_ok = true;
            let mut lines = Vec::new();
            for (s, composite, variant, eq) in &rows {
                if s % 2 == 0 {
                    pattern_ok &= !*eq && composite.add(variant).is_zero();
                    lines.push(format!(
                        "sector {}: composite = {}; variant = {}",
                        s,
                        clip(composite.render(&ctx)),
                        clip(variant.render(&ctx)),
                    ));
                } else {
                    pattern_ok &= *eq;
                }
            }
            Ok(Outcome {
                pass: pattern_ok,
                residual_terms: 0,
                detail: Some(lines.join(" | ")),
            })
        },
    )?;

    let twisted = aksz_twist(&affine_action(&p, &gs, &ctx), &r, &gs, &ctx, &iota)?;
    out.run(
        "covariant_twisted",
        "pi + Gamma rho + u^i G_i satisfies the covariant master equation",
        || {
            Ok(Outcome::from_poly(
                &check_covariant_master(&twisted, &ds, &ctx, &iota).residual,
                &ctx,
            ))
        },
    )?;

    out.run("u0_master", "the u = 0 part satisfies the flat master equation", || {
        Ok(Outcome::from_poly(&check_master(&twisted.at_u_zero(), &ctx).residual, &ctx))
    })?;

    out.run(
        "sigma_free_display",
        "the symbol-free part of pi + Gamma(-rho) is the integrand plus the antifield couplings",
        || {
            let alt = p.add(&gamma_all(&r.neg(), &gs, &ctx, &iota));
            let sf = monomial_filter(&alt, |m| m.sigma_count() == 0 && !m.has_eta());
            let expect = cs3_nonabelian(&ctx).add(&standard_antifield_terms(&ctx));
            Ok(Outcome::from_poly(&sf.sub(&expect), &ctx))
        },
    )?;

    let s0 = twisted.at_u_zero();
    out.run(
        "cocycle_descent",
        "(d + (S,-)) annihilates the descent of every closed cochain of degree <= 3",
        || {
            let mut cocycles = Vec::new();
            for k in 0..=3u32 {
                cocycles.extend(cocycle_basis(lie, k));
            }
            let rs = pmap(mode, &cocycles, |x| {
                let gf = bv_cocycle_from_ce(x, &ctx);
                horizontal_d(&gf, &ctx).add(&soloviev(&s0, &gf, &ctx))
            });
            Ok(Outcome::from_trials(&rs, &ctx))
        },
    )?;

    out.run(
        "induced_bracket",
        "(Gamma f, g) is the shifted Poisson bracket of the ghost cochains on every basis pair",
        || {
            let masks: Vec<u32> = (1u32..(1 << lie.dim)).collect();
            let mut failures = 0usize;
            let mut first_bad = String::new();
            for fm in &masks {
                let mut f = CeElt::zero();
                f.add_term(*fm, crate::rat::q(1));
                let gf = bv_cocycle_from_ce(&f, &ctx);
                for gm in &masks {
                    let mut g = CeElt::zero();
                    g.add_term(*gm, crate::rat::q(1));
                    let (lhs, rhs, exact) = induced_bracket_check(&f, &g, &gf, &ctx)?;
                    if !exact {
                        failures += 1;
                        if first_bad.is_empty() {
                            first_bad = format!(
                                "masks ({:#b},{:#b}): {}",
                                fm,
                                gm,
                                lhs.sub(&rhs).render(&ctx)
                            );
                        }
                    }
                }
            }
            let mut o = Outcome::from_bool(failures == 0, first_bad);
            o.residual_terms = failures;
            Ok(o)
        },
    )?;
    Ok(())
}

/// The master-equation machinery: the homotopy lift, agreement of the
/// covariant certificate with the flat one at u = 0, and the algebra of
/// the descent operators.
fn suite_covariant(lie: &LieAlgebra, seed: u64, mode: ExecMode, out: &mut Checker) -> Result<()> {
    let ctx = build_cs_context(lie.clone())?;
    let p = pi(&ctx);
    let gs = g_all(&ctx);
    let ds: Vec<Poly> = (0..3).map(|i| d_i_symmetric(&ctx, i)).collect();
    let iota = |i: usize, f: &Poly| iota_cs(i, f, &ctx);

    out.run(
        "lift_of_the_free_action",
        "the homotopy lift of pi certifies and adds nothing",
        || {
            let lift = lift_action(&p, &ctx)?;
            Ok(Outcome::from_poly(
                &lift.total.sub(&p).add(&lift.certificate.residual),
                &ctx,
            ))
        },
    )?;

    // The certified u = 0 action: free for abelian input, twisted else.
    let s0 = if lie.is_abelian() {
        p.clone()
    } else {
        p.add(&gamma_all(&rho(&ctx), &gs, &ctx, &iota))
    };

    out.run(
        "u0_agreement",
        "the u = 0 component of the covariant residual is the flat residual",
        || {
            let mut r = Poly::zero();
            for s_u in [affine_action(&s0, &gs, &ctx), affine_action(&p, &gs, &ctx), p.clone()] {
                let cov = check_covariant_master(&s_u, &ds, &ctx, &iota).residual.at_u_zero();
                let flat = check_master(&s_u.at_u_zero(), &ctx).residual;
                r = r.add(&cov.sub(&flat));
            }
            Ok(Outcome::from_poly(&r, &ctx))
        },
    )?;

    let mut smp = Sampler::new(seed, 1, 2);
    let samples: Vec<Poly> = (0..20).map(|_| smp.nonzero_poly(&ctx, 2, true)).collect();

    out.run(
        "descent_operators_anticommute",
        "Gamma_i Gamma_j + Gamma_j Gamma_i = 0 on 20 random elements",
        || {
            let rs = pmap(mode, &samples, |f| {
                let mut r = Poly::zero();
                for i in 0..3 {
                    for j in i..3 {
                        let ij = gamma_op(i, &gamma_op(j, f, &gs, &ctx, &iota), &gs, &ctx, &iota);
                        let ji = gamma_op(j, &gamma_op(i, f, &gs, &ctx, &iota), &gs, &ctx, &iota);
                        r = r.add(&ij.add(&ji));
                    }
                }
                r
            });
            Ok(Outcome::from_trials(&rs, &ctx))
        },
    )?;

    out.run(
        "descent_absorbs_the_composite",
        "Gamma_i (Gamma f) = 0 on 20 random elements",
        || {
            let rs = pmap(mode, &samples, |f| {
                let gf = gamma_all(f, &gs, &ctx, &iota);
                let mut r = Poly::zero();
                for i in 0..3 {
                    r = r.add(&gamma_op(i, &gf, &gs, &ctx, &iota));
                }
                r
            });
            Ok(Outcome::from_trials(&rs, &ctx))
        },
    )?;

    out.run(
        "descent_commutes_with_differential",
        "(d + (S,-)) Gamma_i + Gamma_i (d + (S,-)) = 0 on 20 random elements",
        || {
            let diff = |h: &Poly| horizontal_d(h, &ctx).add(&soloviev(&s0, h, &ctx));
            let rs = pmap(mode, &samples, |f| {
                let mut r = Poly::zero();
                for i in 0..3 {
                    r = r.add(&diff(&gamma_op(i, f, &gs, &ctx, &iota)));
                    r = r.add(&gamma_op(i, &diff(f), &gs, &ctx, &iota));
                }
                r
            });
            Ok(Outcome::from_trials(&rs, &ctx))
        },
    )?;
    Ok(())
}

/// The intertwiner between the adjoint and Hamiltonian differentials of a
/// certified action.
fn suite_alpha(lie: &LieAlgebra, seed: u64, mode: ExecMode, out: &mut Checker) -> Result<()> {
    let ctx = build_cs_context(lie.clone())?;
    let p = pi(&ctx);
    let s = if lie.is_abelian() {
        p
    } else {
        let gs = g_all(&ctx);
        let iota = |i: usize, f: &Poly| iota_cs(i, f, &ctx);
        p.add(&gamma_all(&rho(&ctx), &gs, &ctx, &iota))
    };

    let comps = sigma_count_components(&s, &ctx)?;

    out.run("alpha_fixes_constants", "alpha(1) = 1", || {
        let one = Poly::constant(crate::rat::q(1));
        Ok(Outcome::from_poly(&alpha_intertwiner(&s, &one, &ctx)?.sub(&one), &ctx))
    })?;

    out.run(
        "hamiltonian_leading_sector",
        "X_{S_0} f = (S_0, f) - d C(S_0, f) + C(S_0, d f) on 10 random elements",
        || {
            let mut smp = Sampler::new(seed ^ 0x5ec7, 1, 2);
            let samples: Vec<Poly> = (0..10).map(|_| smp.nonzero_poly(&ctx, 2, true)).collect();
            let rs: Vec<Poly> = pmap(mode, &samples, |f| {
                apply_x(&comps[0], f, &ctx)
                    .sub(&soloviev(&comps[0], f, &ctx))
                    .add(&horizontal_d(&homotopy_c(&comps[0], f, &ctx), &ctx))
                    .sub(&homotopy_c(&comps[0], &horizontal_d(f, &ctx), &ctx))
            });
            Ok(Outcome::from_trials(&rs, &ctx))
        },
    )?;

    // The pinned ghost/antighost pairing plus random elements.
    let mut smp = Sampler::new(seed, 1, 2);
    let pair_cc = {
        let cs: Vec<Poly> = (0..ctx.comps(c_slot()))
            .map(|a| Poly::from_gen(Generator::jet(c_slot() as u8, a as u8, MultiIndex::zero())))
            .collect();
        let cps: Vec<Poly> = (0..ctx.comps(c_plus_slot()))
            .map(|a| {
                Poly::from_gen(Generator::jet(c_plus_slot() as u8, a as u8, MultiIndex::zero()))
            })
            .collect();
        pair_vec(&ctx, &cs, &cps)
    };
    let mut samples: Vec<Poly> = vec![pair_cc];
    samples.extend((0..20).map(|_| smp.nonzero_poly(&ctx, 2, true)));

    out.run(
        "conjugate_squares_to_zero",
        "(d + stilde)^2 f = 0 on the ghost pairing and 5 random elements",
        || {
            let args: Vec<Poly> = samples.iter().take(6).cloned().collect();
            let rs: Vec<Poly> = pmap(mode, &args, |f| {
                let once = horizontal_d(f, &ctx).add(&twisted_action(f, &comps, &ctx));
                horizontal_d(&once, &ctx).add(&twisted_action(&once, &comps, &ctx))
            });
            Ok(Outcome::from_trials(&rs, &ctx))
        },
    )?;

    out.run(
        "alpha_intertwines",
        "(d + stilde) alpha(f) = alpha((d + (S,-)) f) on the ghost pairing and 20 random elements",
        || {
            let rs: Vec<Result<Poly>> =
                pmap(mode, &samples, |f| alpha_residual(&s, f, &ctx));
            let rs = rs.into_iter().collect::<Result<Vec<Poly>>>()?;
            Ok(Outcome::from_trials(&rs, &ctx))
        },
    )?;
    Ok(())
}

/// The finite-dimensional complex: exact Betti numbers, invariants,
/// transgression of trace polynomials, and the vanishing brackets.
fn suite_appendix(lie: &LieAlgebra, _seed: u64, mode: ExecMode, out: &mut Checker) -> Result<()> {
    out.run("differential_squares_to_zero", "delta(delta x) = 0 on every basis cochain", || {
        let masks: Vec<u32> =
            (0..=lie.dim as u32).flat_map(|k| basis_masks(lie.dim, k)).collect();
        let bad = pmap(mode, &masks, |m| {
            let mut e = CeElt::zero();
            e.add_term(*m, crate::rat::q(1));
            ce_differential(lie, &ce_differential(lie, &e))
        });
        let ok = bad.iter().all(|x| x.is_zero());
        Ok(Outcome::from_bool(ok, "a basis cochain fails".into()))
    })?;

    out.run(
        "betti_numbers",
        "sl2: (1,0,0,1); abelian3: (1,3,3,1); so3 + so3: b3 = 2 with b1 = b2 = 0",
        || {
            let expect: [(&str, Vec<usize>); 3] = [
                ("sl2", vec![1, 0, 0, 1]),
                ("abelian3", vec![1, 3, 3, 1]),
                ("so3so3", vec![1, 0, 0, 2]),
            ];
            let mut ok = true;
            let mut lines = Vec::new();
            for (name, want) in expect {
                let g = LieAlgebra::builtin(name)?;
                for (k, target) in want.iter().enumerate() {
                    let got = cohomology(&g, k as u32)?.betti;
                    if got != *target {
                        ok = false;
                        lines.push(format!("{}: b_{} = {} (expected {})", name, k, got, target));
                    }
                }
            }
            Ok(Outcome::from_bool(ok, lines.join("; ")))
        },
    )?;

    out.run(
        "invariants_match_cohomology",
        "for sl2 and so3 the invariant cochains are closed and count the Betti numbers",
        || {
            let mut ok = true;
            let mut lines = Vec::new();
            for name in ["sl2", "so3"] {
                let g = LieAlgebra::builtin(name)?;
                for k in 0..=g.dim as u32 {
                    let inv = invariants(&g, k);
                    let b = cohomology(&g, k)?.betti;
                    if inv.len() != b {
                        ok = false;
                        lines.push(format!("{} degree {}: {} vs b = {}", name, k, inv.len(), b));
                    }
                    for f in &inv {
                        if !ce_differential(&g, f).is_zero() {
                            ok = false;
                            lines.push(format!("{} degree {}: invariant not closed", name, k));
                        }
                    }
                }
            }
            Ok(Outcome::from_bool(ok, lines.join("; ")))
        },
    )?;

    out.run(
        "quadratic_transgression",
        "the pairing quadratic transgresses to the cubic cocycle on sl2 and so3",
        || {
            let mut ok = true;
            for name in ["sl2", "so3"] {
                let g = LieAlgebra::builtin(name)?;
                ok &= transgression(&g, &pairing_quadratic(&g))? == ce_cubic(&g);
            }
            Ok(Outcome::from_bool(ok, "transgression differs from the cubic".into()))
        },
    )?;

    out.run(
        "trace_polynomials",
        "trace polynomials are invariant, vanish on Theta, and transgress to cocycles",
        || {
            let mut ok = true;
            let mut lines = Vec::new();
            for name in ["sl2", "so3"] {
                let g = LieAlgebra::builtin(name)?;
                let theta_sq: Vec<CeElt> =
                    (0..g.dim).map(|a| crate::ce::theta_squared(&g, a)).collect();
                let mut reps = vec![("adjoint", g.adjoint_matrices())];
                for r in &g.reps {
                    reps.push((r.name.as_str(), r.matrices.clone()));
                }
                for (rname, mats) in reps {
                    for ell in 1..=3u32 {
                        let p = trace_polynomial(&mats, ell);
                        let mut here = invariance_defect(&g, &p).is_zero();
                        here &= p.eval_ce(&theta_sq).is_zero();
                        let tau = transgression(&g, &p)?;
                        here &= ce_differential(&g, &tau).is_zero();
                        here &= tau == transgression_direct(&mats, ell);
                        if !here {
                            ok = false;
                            lines.push(format!("{} {} l={}", name, rname, ell));
                        }
                    }
                }
            }
            Ok(Outcome::from_bool(ok, lines.join("; ")))
        },
    )?;

    out.run(
        "transgression_kills_products",
        "products of positive-degree invariants transgress to zero",
        || {
            let g = LieAlgebra::builtin("sl2")?;
            let p = trace_polynomial(&g.adjoint_matrices(), 2);
            let qq = pairing_quadratic(&g);
            let mut r = transgression(&g, &p.mul(&qq))?;
            r = r.add(&transgression(&g, &qq.mul(&qq))?);
            Ok(Outcome::from_bool(r.is_zero(), r.render(&g)))
        },
    )?;

    out.run(
        "cubic_spans_top_cohomology",
        "the transgressed Casimir trace spans the degree-3 cohomology of sl2",
        || {
            let g = LieAlgebra::builtin("sl2")?;
            let tau = transgression(&g, &trace_polynomial(&g.reps[0].matrices, 2))?;
            let reps3 = cohomology(&g, 3)?.representatives;
            // Both are nonzero multiples of the single basis mask of degree 3.
            let ok = reps3.len() == 1
                && !tau.is_zero()
                && {
                    let m = 0b111u32;
                    let a = tau.terms.get(&m).cloned();
                    let b = reps3[0].terms.get(&m).cloned();
                    match (a, b) {
                        (Some(a), Some(b)) => {
                            tau.scale(&b) == reps3[0].scale(&a)
                        }
                        _ => false,
                    }
                };
            Ok(Outcome::from_bool(ok, "span comparison failed".into()))
        },
    )?;

    out.run(
        "invariant_brackets_vanish",
        "the shifted Poisson bracket kills invariant pairs on sl2, so3, and so3 + so3",
        || {
            let mut ok = true;
            for name in ["sl2", "so3", "so3so3"] {
                let g = LieAlgebra::builtin(name)?;
                let all: Vec<CeElt> =
                    (0..=g.dim as u32).flat_map(|k| invariants(&g, k)).collect();
                for f in &all {
                    for h in &all {
                        ok &= shifted_poisson(&g, f, h).is_zero();
                    }
                }
            }
            Ok(Outcome::from_bool(ok, "an invariant pair has nonzero bracket".into()))
        },
    )?;

    out.run(
        "differential_is_the_cubic_bracket",
        "delta x = {rho, x} on every basis cochain of the input algebra",
        || {
            let masks: Vec<u32> =
                (0..=lie.dim as u32).flat_map(|k| basis_masks(lie.dim, k)).collect();
            let r = ce_cubic(lie);
            let bad = pmap(mode, &masks, |m| {
                let mut e = CeElt::zero();
                e.add_term(*m, crate::rat::q(1));
                shifted_poisson(lie, &r, &e).sub(&ce_differential(lie, &e))
            });
            let ok = bad.iter().all(|x| x.is_zero());
            Ok(Outcome::from_bool(ok, "a basis cochain fails".into()))
        },
    )?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(Suite::parse(s.name()), Some(s));
        }
        assert_eq!(Suite::parse("nope"), None);
        assert_eq!(Suite::AbelianCs.default_algebra(), "abelian3");
        assert_eq!(Suite::Brackets.default_algebra(), "sl2");
    }

    #[test]
    fn abelian_suite_rejects_nonabelian_input() {
        let lie = LieAlgebra::builtin("so3").unwrap();
        assert!(run_suite(Suite::AbelianCs, &lie, 1, ExecMode::Sequential).is_err());
        let ab = LieAlgebra::builtin("abelian1").unwrap();
        assert!(run_suite(Suite::NonabelianCs, &ab, 1, ExecMode::Sequential).is_err());
    }

    #[test]
    fn reports_are_deterministic_across_modes() {
        let lie = LieAlgebra::builtin("abelian1").unwrap();
        let a = run_suite(Suite::Brackets, &lie, 7, ExecMode::Sequential)
            .unwrap()
            .finish(false)
            .to_json_string();
        let b = run_suite(Suite::Brackets, &lie, 7, ExecMode::Parallel)
            .unwrap()
            .finish(false)
            .to_json_string();
        assert_eq!(a, b);
    }
}
