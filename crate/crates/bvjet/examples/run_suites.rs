//! Runs every verification suite on its default built-in algebra and
//! prints one line per check.
//!
//!     cargo run --release -p bvjet --example run_suites

use bvjet::lie::LieAlgebra;
use bvjet::par::ExecMode;
use bvjet::verify::{run_suite, Suite};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mode = ExecMode::Parallel.effective();
    for suite in Suite::ALL {
        let lie = LieAlgebra::builtin(suite.default_algebra())?;
        let start = std::time::Instant::now();
        let report = run_suite(suite, &lie, 2026, mode)?.finish(true);
        for c in &report.checks {
            println!(
                "{:5} {}/{} [{} ms] residual_terms={} {}",
                if c.pass { "ok" } else { "FAIL" },
                report.suite,
                c.name,
                c.wall_ms.unwrap_or(0),
                c.residual_terms,
                c.detail.clone().unwrap_or_default()
            );
        }
        println!(
            "suite {} on {}: {} in {:?}",
            report.suite,
            report.algebra,
            if report.passed { "passed" } else { "FAILED" },
            start.elapsed()
        );
    }
    Ok(())
}
