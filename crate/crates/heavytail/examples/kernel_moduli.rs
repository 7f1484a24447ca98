// SPDX-License-Identifier: MIT

//! Simulation kernels and their moduli of continuity.
//!
//! Tabulates a fractional limit kernel on the grid, measures how far the
//! interpolated tabulation sits from the limit in sup norm, and compares
//! the discrete r-th power modulus against its closed form — the uniform
//! bound that drives tightness of the middle part.
//!
//! Run with `cargo run --example kernel_moduli`.

use heavytail::kernels::{
    discrete_modulus, fractional_modulus_closed_form, sup_distance, InterpKernel, LimitKernel,
    StepKernel,
};

fn main() -> heavytail::Result<()> {
    let gamma = 1.5;
    let n = 2_000;
    let limit = LimitKernel::fractional(gamma)?;
    let step = StepKernel::from_fn(|t| limit.eval(t), n)?;
    let interp = InterpKernel::new(step.clone());

    println!(
        "fractional kernel gamma = {gamma} tabulated on an n = {n} grid; k(1) = {}",
        limit.eval(1.0)
    );
    println!(
        "sup distance between the interpolated tabulation and the limit: {:.3e}",
        sup_distance(&interp, &limit)
    );

    println!("discrete modulus vs closed form (r = 2):");
    for delta in [0.1, 0.05, 0.01] {
        let report = discrete_modulus(&step, 2, delta)?;
        let closed = fractional_modulus_closed_form(gamma, delta)?;
        println!(
            "  delta = {delta:>5}: modulus {:.6e}, closed form {:.6e}, ratio {:.4}",
            report.value,
            closed,
            report.value / closed
        );
    }
    Ok(())
}
