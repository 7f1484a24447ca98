// SPDX-License-Identifier: MIT

//! The truncated LePage series representation of a stable process.
//!
//! Builds one series path from its Poisson atoms, checks the exact mean of
//! the compensated positive branch at time 1, and verifies 1/alpha
//! self-similarity of the drift-corrected process with a two-sample
//! Kolmogorov–Smirnov comparison between `L_0(1/2)` and `2^{-1/alpha}·L_0(1)`.
//!
//! Run with `cargo run --example lepage_series`.

use heavytail::harness::{ks_two_sample, mean_and_sd, thresholds};
use heavytail::rng::derive_seed;
use heavytail::simulate::{lepage_levy, scaling_check, DEFAULT_DEPTH};

fn main() -> heavytail::Result<()> {
    let alpha = 1.5;

    // One path on a coarse grid: the atoms are shared across grid points,
    // so the path is a right-continuous jump function minus a linear
    // compensator.
    let grid: Vec<f64> = (0..=4).map(|i| i as f64 / 4.0).collect();
    let path = lepage_levy(alpha, 0.5, 0.5, DEFAULT_DEPTH, &grid, 42)?;
    println!(
        "series path at depth {}: {} kept atoms per branch",
        path.depth,
        path.atoms.len()
    );
    for (t, v) in grid.iter().zip(&path.values) {
        println!("  L({t:.2}) = {v:+.4}");
    }

    // The compensated positive branch has mean alpha/(alpha-1) at t = 1,
    // exactly, at any truncation depth — so a shallow series suffices here.
    let reps = 400;
    let samples: Vec<f64> = (0..reps)
        .map(|r| {
            lepage_levy(alpha, 1.0, 0.0, 2_000.0, &[1.0], derive_seed(9, r))
                .map(|path| path.values[0])
        })
        .collect::<heavytail::Result<_>>()?;
    let (mean, sd) = mean_and_sd(&samples);
    let target = alpha / (alpha - 1.0);
    let stderr = sd / (reps as f64).sqrt();
    println!(
        "mean of L+(1) over {reps} draws: {mean:.4} (target {target}, stderr {stderr:.4})"
    );

    // Self-similarity: L_0(t) and t^{1/alpha}·L_0(1) share a distribution.
    let (at_half, scaled) = scaling_check(alpha, 0.5, 0.5, 0.5, 250, 11)?;
    let ks = ks_two_sample(&at_half, &scaled)?;
    let threshold = thresholds::ks_two_sample(at_half.len(), scaled.len());
    println!("scaling KS at t = 1/2: {ks:.4} (threshold {threshold:.4})");
    assert!(ks < threshold, "the series path is 1/alpha self-similar");
    Ok(())
}
