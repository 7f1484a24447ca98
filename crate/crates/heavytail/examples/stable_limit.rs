// SPDX-License-Identifier: MIT

//! The stable limit of the rescaled partial-sum process.
//!
//! For the plain random walk (kernel ≡ 1) with symmetric heavy-tailed
//! innovations, the rescaled endpoint converges in distribution to the
//! endpoint of the truncated-series stable path. The example draws both
//! samples and compares them with a two-sample Kolmogorov–Smirnov
//! statistic.
//!
//! Run with `cargo run --example stable_limit`.

use heavytail::dist::TailBalancedLaw;
use heavytail::harness::{ks_two_sample, thresholds};
use heavytail::kernels::{LimitKernel, StepKernel};
use heavytail::rng::derive_seed;
use heavytail::simulate::{fractional_levy, path_endpoint_rescaled, DEFAULT_DEPTH};

fn main() -> heavytail::Result<()> {
    let n = 5_000;
    let reps = 400;
    let law = TailBalancedLaw::symmetric(1.5)?;
    let kernel = StepKernel::from_fn(|_| 1.0, n)?;

    let endpoints: Vec<f64> = (0..reps)
        .map(|r| path_endpoint_rescaled(&law, &kernel, n, derive_seed(7, r)))
        .collect::<heavytail::Result<_>>()?;

    let unit = LimitKernel::constant(1.0)?;
    let limits: Vec<f64> = (0..reps)
        .map(|r| {
            fractional_levy(
                &unit,
                law.alpha,
                law.p,
                law.q,
                DEFAULT_DEPTH,
                &[1.0],
                derive_seed(7, reps + r),
            )
            .map(|values| values[0])
        })
        .collect::<heavytail::Result<_>>()?;

    let ks = ks_two_sample(&endpoints, &limits)?;
    let threshold = thresholds::ks_two_sample(reps as usize, reps as usize);
    println!("n = {n}, {reps} path endpoints vs {reps} series endpoints");
    println!("two-sample KS = {ks:.4} (threshold {threshold:.4})");
    assert!(ks < threshold, "the rescaled walk matches its stable limit");
    Ok(())
}
