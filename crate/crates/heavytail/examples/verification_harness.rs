// SPDX-License-Identifier: MIT

//! Running a seeded Monte Carlo experiment through the harness.
//!
//! Builds one experiment specification — the Gaussian limit of the middle
//! part under truncation — runs it over replicate-derived streams, and
//! prints the summary table in both report formats. Replicates fold in
//! index order, so the numbers do not depend on the worker count
//! (`HEAVYTAIL_THREADS` caps it).
//!
//! The command `heavytail verify` runs the full acceptance suite of ten
//! criteria through this same machinery.
//!
//! Run with `cargo run --example verification_harness`.

use heavytail::dist::TailBalancedLaw;
use heavytail::harness::{run_experiment, ExperimentSpec, ModelSpec, OutputFlags};
use heavytail::kernels::LimitKernel;

fn main() -> heavytail::Result<()> {
    let spec = ExperimentSpec {
        name: "gaussianity".into(),
        law: TailBalancedLaw::symmetric(1.5)?,
        model: ModelSpec::Kernel(LimitKernel::fractional(1.5)?),
        n_values: vec![2_000, 4_000],
        reps: 400,
        seed: 42,
        outputs: OutputFlags {
            csv: true,
            json: true,
        },
    };
    let table = run_experiment(&spec)?;

    print!("{}", table.to_csv());
    println!();
    println!("{}", table.to_json()?);
    println!(
        "all rows pass: {} (exit code 0 for `heavytail verify` means the same)",
        table.all_pass()
    );
    Ok(())
}
