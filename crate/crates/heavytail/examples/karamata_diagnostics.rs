// SPDX-License-Identifier: MIT

//! Regular-variation diagnostics for coefficient series.
//!
//! FARIMA coefficients vary regularly with index `gamma - 1`; Karamata's
//! theorem then pins both the coefficient and the partial-sum asymptotics
//! in terms of the generating function at `1 - 1/n`. The example tabulates
//! the two normalized ratios over a compact x-range, where both should sit
//! within a few permille of 1, alongside the normalized-regular-variation
//! defect of the raw series.
//!
//! Run with `cargo run --example karamata_diagnostics`.

use heavytail::gfp::{farima_coeffs, nrv_defect, partial_sums, FarimaSpec};
use heavytail::numerics::gamma_fn;

fn main() -> heavytail::Result<()> {
    let gamma = 1.3;
    let n = 10_000usize;
    let spec = FarimaSpec::new(gamma, vec![1.0], vec![1.0])?;
    let series = farima_coeffs(&spec, 2 * n)?;
    let norm = spec.value_at(1.0 - 1.0 / n as f64)?;

    println!("gamma = {gamma}, n = {n}: Karamata ratios (both tend to 1)");
    println!("    x    coefficient ratio    partial-sum ratio");
    for i in [1usize, 5, 10, 15, 20] {
        let x = 0.1 * i as f64;
        let index = (n as f64 * x).floor() as usize;
        let coeff_ratio =
            series.g[index] * gamma_fn(gamma) * n as f64 / (x.powf(gamma - 1.0) * norm);
        let sum_ratio =
            partial_sums(&series, n as f64 * x)? * gamma_fn(1.0 + gamma) / (x.powf(gamma) * norm);
        println!("  {x:>4.1}    {coeff_ratio:>17.6}    {sum_ratio:>17.6}");
    }

    // The defect sequence k·(g_{k+1}/g_k - 1) - (gamma - 1) certifies
    // normalized regular variation directly from the recursion.
    let defects = nrv_defect(&series, gamma);
    let worst_late = defects[100..]
        .iter()
        .fold(0.0f64, |acc, &d| acc.max(d.abs()));
    println!("worst normalized-regular-variation defect beyond k = 100: {worst_late:.3e}");
    Ok(())
}
