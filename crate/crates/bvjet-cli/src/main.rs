//! Command-line driver: loads a Lie algebra, runs named verification
//! suites, computes exterior-complex cohomology, and drives randomized
//! property checks. Reports are JSON with `"schema": 1` and are
//! byte-identical across runs for a fixed seed and inputs; wall-clock
//! timings appear only under `--timings`.
//!
//! Exit codes: 0 all checks pass, 1 at least one check fails, 2 input or
//! domain error (bad algebra file, singular pairing, unknown suite).

use bvjet::bicomplex::{homotopy_h, horizontal_d};
use bvjet::brackets::soloviev;
use bvjet::ce::{cohomology, invariants};
use bvjet::cs::build_cs_context;
use bvjet::lie::LieAlgebra;
use bvjet::par::{pmap, ExecMode};
use bvjet::poly::Poly;
use bvjet::rat::sign_pow;
use bvjet::report::{CheckItem, VerificationReport};
use bvjet::sample::Sampler;
use bvjet::verify::{run_suite, Suite};
use clap::{Args, Parser, Subcommand};
use std::path::PathBuf;

/// Environment variable naming the directory searched for relative
/// algebra file paths.
const ALGEBRA_DIR_VAR: &str = "BVJET_ALGEBRA_DIR";

#[derive(Parser)]
#[command(
    name = "bvjet",
    version,
    about = "Exact verification driver for the graded variational-bicomplex engine"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct CommonOpts {
    /// Builtin algebra name (`sl2`, `so3`, `abelian1`, `abelian2`,
    /// `abelian3`, `so3so3`, or `builtin:NAME`) or a path to a JSON file;
    /// relative paths are also resolved against $BVJET_ALGEBRA_DIR.
    #[arg(long)]
    algebra: Option<String>,
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Include wall-clock timings in the report (breaks byte-identity).
    #[arg(long)]
    timings: bool,
    /// Evaluate checks sequentially instead of data-parallel.
    #[arg(long)]
    sequential: bool,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run a named verification suite and emit its report.
    Verify {
        /// One of: brackets, poincare, abelian-cs, nonabelian-cs,
        /// covariant, alpha, appendix, all.
        #[arg(long)]
        suite: String,
        /// Seed for the deterministic sampler.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Exact cohomology of the finite exterior complex: Betti numbers,
    /// invariant dimensions, and representatives per degree.
    Cohomology {
        /// Highest degree to report (defaults to the algebra dimension).
        #[arg(long)]
        max_degree: Option<u32>,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Randomized property checks over the documented sampler: uniform
    /// monomials of bounded jet order and field degree with rational
    /// coefficients in -3..=3 excluding 0.
    RandomProperty {
        /// One of: jacobi, leibniz, homotopy.
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 50)]
        trials: usize,
        #[arg(long, default_value_t = 1)]
        max_jet_order: u8,
        #[arg(long, default_value_t = 2)]
        max_field_degree: u32,
        #[command(flatten)]
        common: CommonOpts,
    },
}

fn main() {
    std::process::exit(run());
}

fn run() -> i32 {
    let cli = Cli::parse();
    let outcome = match cli.cmd {
        Cmd::Verify { suite, seed, common } => cmd_verify(&suite, seed, &common),
        Cmd::Cohomology { max_degree, common } => cmd_cohomology(max_degree, &common),
        Cmd::RandomProperty {
            suite,
            seed,
            trials,
            max_jet_order,
            max_field_degree,
            common,
        } => cmd_random_property(&suite, seed, trials, max_jet_order, max_field_degree, &common),
    };
    match outcome {
        Ok(pass) => {
            if pass {
                0
            } else {
                1
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

/// Resolve `--algebra` to a loaded algebra plus its report label:
/// `builtin:NAME` and bare builtin names load the named builtin; anything
/// else is a file path, tried as given and then under the directory named
/// by $BVJET_ALGEBRA_DIR.
fn resolve_algebra(spec: &str) -> anyhow::Result<(LieAlgebra, String)> {
    if let Some(name) = spec.strip_prefix("builtin:") {
        return Ok((LieAlgebra::builtin(name)?, name.to_string()));
    }
    if LieAlgebra::builtin_names().contains(&spec) {
        return Ok((LieAlgebra::builtin(spec)?, spec.to_string()));
    }
    let direct = PathBuf::from(spec);
    let path = if direct.exists() {
        direct
    } else if let Ok(dir) = std::env::var(ALGEBRA_DIR_VAR) {
        let joined = PathBuf::from(dir).join(spec);
        if joined.exists() {
            joined
        } else {
            direct
        }
    } else {
        direct
    };
    let lie = LieAlgebra::from_path(&path)?;
    let label = lie.name.clone();
    Ok((lie, label))
}

fn mode_of(common: &CommonOpts) -> ExecMode {
    if common.sequential {
        ExecMode::Sequential
    } else {
        ExecMode::Parallel.effective()
    }
}

fn emit(report: &VerificationReport, common: &CommonOpts) -> anyhow::Result<()> {
    let json = report.to_json_string();
    match &common.out {
        Some(path) => std::fs::write(path, json)?,
        None => print!("{json}"),
    }
    Ok(())
}

fn cmd_verify(suite: &str, seed: u64, common: &CommonOpts) -> anyhow::Result<bool> {
    let mode = mode_of(common);
    if suite == "all" {
        let base: Option<(LieAlgebra, String)> = match &common.algebra {
            Some(s) => Some(resolve_algebra(s)?),
            None => None,
        };
        let mut labels: Vec<String> = Vec::new();
        let mut merged: Option<VerificationReport> = None;
        for s in Suite::ALL {
            // A suite that constrains the algebra class falls back to its
            // own default when the requested algebra does not fit.
            let (lie, label) = match &base {
                Some((lie, label)) if suite_accepts(s, lie) => (lie.clone(), label.clone()),
                _ => {
                    let name = s.default_algebra();
                    (LieAlgebra::builtin(name)?, name.to_string())
                }
            };
            let sub = run_suite(s, &lie, seed, mode)?;
            labels.push(format!("{}: {}", s.name(), label));
            let target = merged.get_or_insert_with(|| VerificationReport::new("all", "", seed));
            for mut c in sub.checks {
                c.name = format!("{}/{}", s.name(), c.name);
                target.push(c);
            }
        }
        let mut report = merged.expect("at least one suite ran");
        report.algebra = labels.join("; ");
        let report = report.finish(common.timings);
        emit(&report, common)?;
        return Ok(report.passed);
    }

    let s = Suite::parse(suite).ok_or_else(|| anyhow::anyhow!("unknown suite: {suite}"))?;
    let (lie, _label) = match &common.algebra {
        Some(spec) => resolve_algebra(spec)?,
        None => {
            let name = s.default_algebra();
            (LieAlgebra::builtin(name)?, name.to_string())
        }
    };
    let report = run_suite(s, &lie, seed, mode)?.finish(common.timings);
    emit(&report, common)?;
    Ok(report.passed)
}

fn suite_accepts(s: Suite, lie: &LieAlgebra) -> bool {
    match s {
        Suite::AbelianCs => lie.is_abelian(),
        Suite::NonabelianCs => !lie.is_abelian(),
        _ => true,
    }
}

fn cmd_cohomology(max_degree: Option<u32>, common: &CommonOpts) -> anyhow::Result<bool> {
    let (lie, label) = match &common.algebra {
        Some(spec) => resolve_algebra(spec)?,
        None => (LieAlgebra::builtin("sl2")?, "sl2".to_string()),
    };
    let top = max_degree.unwrap_or(lie.dim as u32).min(lie.dim as u32);
    let mut report = VerificationReport::new("cohomology", &label, 0);
    for k in 0..=top {
        let h = cohomology(&lie, k)?;
        let inv = invariants(&lie, k);
        let reps: Vec<String> = h.representatives.iter().map(|r| r.render(&lie)).collect();
        let mut item = CheckItem::pass(
            &format!("degree_{k}"),
            "exact rank computation over the exterior complex",
        );
        item.detail = Some(format!(
            "space_dim={} betti={} invariant_dim={} representatives=[{}]",
            h.dim_space,
            h.betti,
            inv.len(),
            reps.join(", ")
        ));
        report.push(item);
    }
    let report = report.finish(common.timings);
    emit(&report, common)?;
    Ok(report.passed)
}

fn cmd_random_property(
    suite: &str,
    seed: u64,
    trials: usize,
    max_jet_order: u8,
    max_field_degree: u32,
    common: &CommonOpts,
) -> anyhow::Result<bool> {
    let (lie, label) = match &common.algebra {
        Some(spec) => resolve_algebra(spec)?,
        None => (LieAlgebra::builtin("sl2")?, "sl2".to_string()),
    };
    let ctx = build_cs_context(lie)?;
    let mode = mode_of(common);
    let mut smp = Sampler::new(seed, max_jet_order, max_field_degree);
    let mut report = VerificationReport::new(&format!("random-{suite}"), &label, seed);

    match suite {
        "jacobi" => {
            let triples: Vec<(Poly, u8, Poly, u8, Poly, u8)> = (0..trials)
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
            let rs: Vec<Poly> = pmap(mode, &triples, |(f, pf, g, pg, h, ph)| {
                let t1 = soloviev(f, &soloviev(g, h, &ctx), &ctx)
                    .scale(&sign_pow(u32::from((pf + 1) * (ph + 1))));
                let t2 = soloviev(g, &soloviev(h, f, &ctx), &ctx)
                    .scale(&sign_pow(u32::from((pg + 1) * (pf + 1))));
                let t3 = soloviev(h, &soloviev(f, g, &ctx), &ctx)
                    .scale(&sign_pow(u32::from((ph + 1) * (pg + 1))));
                t1.add(&t2).add(&t3)
            });
            report.push(trial_item(
                "jacobi",
                "cyclic sum of (-1)^{(pf+1)(ph+1)} (f,(g,h)) vanishes",
                &rs,
                &triples
                    .iter()
                    .map(|(f, _, g, _, h, _)| {
                        format!("f = {}; g = {}; h = {}", f.render(&ctx), g.render(&ctx), h.render(&ctx))
                    })
                    .collect::<Vec<_>>(),
                &ctx,
                None,
            ));
        }
        "leibniz" => {
            let pairs: Vec<(Poly, u8, Poly)> = (0..trials)
                .map(|t| {
                    let pf = (t & 1) as u8;
                    let pg = ((t >> 1) & 1) as u8;
                    (smp.homogeneous(&ctx, pf, 2), pf, smp.homogeneous(&ctx, pg, 2))
                })
                .collect();
            let rs: Vec<Poly> = pmap(mode, &pairs, |(f, pf, g)| {
                let lhs = horizontal_d(&soloviev(f, g, &ctx), &ctx);
                let rhs = soloviev(&horizontal_d(f, &ctx), g, &ctx).add(
                    &soloviev(f, &horizontal_d(g, &ctx), &ctx)
                        .scale(&sign_pow(u32::from(pf + 1))),
                );
                lhs.sub(&rhs)
            });
            report.push(trial_item(
                "leibniz",
                "d(f,g) = (df,g) + (-1)^{pf+1} (f,dg)",
                &rs,
                &pairs
                    .iter()
                    .map(|(f, _, g)| format!("f = {}; g = {}", f.render(&ctx), g.render(&ctx)))
                    .collect::<Vec<_>>(),
                &ctx,
                None,
            ));
        }
        "homotopy" => {
            // Keep only monomials inside the homotopy's domain; a trial
            // whose sample has no such part is skipped with a note.
            let mut skipped = 0usize;
            let mut args: Vec<Poly> = Vec::new();
            for _ in 0..trials {
                let p = smp.nonzero_poly(&ctx, 2, true);
                let mut kept = Poly::zero();
                for (m, c) in &p.terms {
                    if m.sigma_count() >= 1 && m.field_degree() >= 1 && !m.has_eta() {
                        kept.add_term(m.clone(), c.clone());
                    }
                }
                if kept.is_zero() {
                    skipped += 1;
                } else {
                    args.push(kept);
                }
            }
            let rs: Vec<Poly> = pmap(mode, &args, |f| {
                horizontal_d(&homotopy_h(f, &ctx), &ctx)
                    .add(&homotopy_h(&horizontal_d(f, &ctx), &ctx))
                    .sub(f)
            });
            let note = format!(
                "{skipped} trials skipped: outside the homotopy domain (form degree 0 or field degree 0)"
            );
            report.push(trial_item(
                "homotopy",
                "dH f + H df = f on positive-weight densities",
                &rs,
                &args.iter().map(|f| format!("f = {}", f.render(&ctx))).collect::<Vec<_>>(),
                &ctx,
                Some(note),
            ));
        }
        other => anyhow::bail!("unknown property suite: {other}"),
    }

    let report = report.finish(common.timings);
    emit(&report, common)?;
    Ok(report.passed)
}

/// One check item summarizing a trial series: pass iff every residual is
/// zero, the first counterexample quoted verbatim on failure.
fn trial_item(
    name: &str,
    anchor: &str,
    residuals: &[Poly],
    inputs: &[String],
    ctx: &bvjet::context::JetContext,
    note: Option<String>,
) -> CheckItem {
    let mut terms = 0usize;
    let mut first: Option<usize> = None;
    for (i, r) in residuals.iter().enumerate() {
        if !r.is_zero() {
            terms += r.terms.len();
            first.get_or_insert(i);
        }
    }
    match first {
        None => {
            let mut item = CheckItem::pass(name, anchor);
            item.detail = note;
            item
        }
        Some(i) => {
            let mut detail = format!(
                "first counterexample (trial {i}): {}; residual = {}",
                inputs[i],
                residuals[i].render(ctx)
            );
            if let Some(n) = note {
                detail = format!("{detail} | {n}");
            }
            CheckItem::fail(name, anchor, terms, detail)
        }
    }
}
