// SPDX-License-Identifier: MIT

//! Point patterns of rescaled exceedances and their Poisson limit.
//!
//! Extracts the large points of one simulated FARIMA path, samples the
//! limit pattern from its Poisson representation with the same
//! coefficients, and compares mean rectangle counts from the sampler
//! against the closed-form mean measure `p·x^{-alpha}·Σ kappa_i^alpha`.
//!
//! Run with `cargo run --example point_patterns`.

use heavytail::dist::TailBalancedLaw;
use heavytail::gfp::{farima_coeffs, FarimaSpec};
use heavytail::kernels::coeff_step_kernel;
use heavytail::pointproc::{count_rectangle, extract_pattern, sample_limit_pattern};
use heavytail::rng::derive_seed;
use heavytail::simulate::simulate_path;

fn main() -> heavytail::Result<()> {
    let n = 4_000;
    let alpha = 1.5;
    let p = 0.7;
    let floor = 0.05;
    let law = TailBalancedLaw::new(alpha, p)?;
    let spec = FarimaSpec::new(0.1, vec![1.0], vec![1.0])?;
    let series = farima_coeffs(&spec, n)?;

    // Empirical side: exceedances of one rescaled path.
    let kernel = coeff_step_kernel(&series.g, n)?;
    let bundle = simulate_path(&law, &kernel, n, 42)?;
    let pattern = extract_pattern(&bundle, floor)?;
    let (above, below) = count_rectangle(&pattern, 0.0, 1.0, 0.2)?;
    println!(
        "extracted pattern: {} points above the floor, largest {:.3}",
        pattern.points.len(),
        pattern.max_y()
    );
    println!("  counts in [0,1] x (0.2,inf): {above} up, {below} down");

    // Limit side: mean counts from the Poisson sampler against the mean
    // measure of the limit process.
    let kappa_alpha: f64 = series.g.iter().map(|k| k.powf(alpha)).sum();
    let reps = 500;
    let x = 0.5;
    let mut total = 0usize;
    for r in 0..reps {
        let sampled = sample_limit_pattern(
            &series,
            alpha,
            p,
            1.0 - p,
            10_000.0,
            floor,
            derive_seed(7, r),
        )?;
        total += count_rectangle(&sampled, 0.0, 1.0, x)?.0;
    }
    let mean = total as f64 / reps as f64;
    let target = p * x.powf(-alpha) * kappa_alpha;
    println!(
        "sampled mean count above x = {x}: {mean:.4} (mean measure {target:.4}, rel {:+.3})",
        mean / target - 1.0
    );
    assert!(
        (mean / target - 1.0).abs() < 0.15,
        "sampler agrees with the mean measure"
    );
    Ok(())
}
