// SPDX-License-Identifier: MIT

//! Extreme values of a long-memory heavy-tailed path.
//!
//! For symmetric innovations the rescaled path maximum has the explicit
//! limit law `exp(-p·g_max^alpha·x^{-alpha})`. The example runs the
//! harness experiment that estimates `P{max <= x}` over seeded replicates
//! and prints the gap to that closed form at several levels.
//!
//! Run with `cargo run --example extreme_values`.

use heavytail::dist::TailBalancedLaw;
use heavytail::gfp::FarimaSpec;
use heavytail::harness::{run_experiment, ExperimentSpec, ModelSpec, OutputFlags};
use heavytail::pointproc::extreme_cdf;

fn main() -> heavytail::Result<()> {
    let spec = ExperimentSpec {
        name: "extremes".into(),
        law: TailBalancedLaw::symmetric(1.5)?,
        model: ModelSpec::Farima(FarimaSpec::new(0.5, vec![1.0], vec![1.0])?),
        n_values: vec![10_000],
        reps: 400,
        seed: 42,
        outputs: OutputFlags::default(),
    };
    let table = run_experiment(&spec)?;
    print!("{}", table.to_csv());

    // At this desk size the gap should already sit well under 0.1; the
    // full-scale acceptance run (n = 5·10^4, 1000 replicates) holds the
    // tighter 0.05 band — see `heavytail verify`.
    for row in &table.rows {
        assert!(row.value < 0.1, "{}: {}", row.statistic, row.value);
    }

    // The closed form itself: a Fréchet law scaled by the largest kernel
    // value and the positive tail weight.
    println!("limit CDF at the probe levels (g_max = 1, p = 1/2):");
    for x in [0.5, 1.0, 2.0] {
        println!("  x = {x}: {:.6}", extreme_cdf(1.5, 0.5, 1.0, x)?);
    }
    Ok(())
}
