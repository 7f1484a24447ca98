// SPDX-License-Identifier: MIT

//! The FARIMA coefficient engine.
//!
//! Prints the binomial series prefix for a plain fractional model, the
//! coefficients of a model with moving-average and autoregressive parts,
//! and the first-order expansion residual `e_1(n)`, which halves when `n`
//! doubles — the numerical signature of the gamma-ratio expansion.
//!
//! Run with `cargo run --example farima_coefficients`.

use heavytail::gfp::{expansion_residual, farima_coeffs, FarimaSpec};

fn main() -> heavytail::Result<()> {
    // Plain fractional integration of order d = 1.5: the series of
    // (1 - z)^(-d), whose first values are 1, 1.5, 1.875, 2.1875.
    let plain = FarimaSpec::new(1.5, vec![1.0], vec![1.0])?;
    let series = farima_coeffs(&plain, 8)?;
    println!("FARIMA(0, 1.5, 0) coefficients g_0..g_8:");
    println!(
        "  {}",
        series
            .g
            .iter()
            .map(|g| format!("{g:.6}"))
            .collect::<Vec<_>>()
            .join(", ")
    );

    // A full model: Theta(x) = 1 + 0.5x, Phi(x) = 1 - 0.2x. The division
    // recursion folds both polynomials into the same series.
    let full = FarimaSpec::new(1.7, vec![1.0, 0.5], vec![1.0, -0.2])?;
    let g = farima_coeffs(&full, 5)?;
    println!("FARIMA(1, 1.7, 1) coefficients g_0..g_5:");
    println!(
        "  {}",
        g.g.iter()
            .map(|g| format!("{g:.6}"))
            .collect::<Vec<_>>()
            .join(", ")
    );

    // The scaled residual of the first-order prediction contracts like
    // 1/n: each doubling of n should roughly halve it.
    println!("first-order expansion residual e_1(n) and its halving ratio:");
    for spec in [&plain, &full] {
        let mut previous: Option<f64> = None;
        print!("  d = {}:", spec.gamma);
        for n in [512usize, 1024, 2048, 4096] {
            let e = expansion_residual(spec, 1, n)?;
            match previous {
                None => print!(" e({n}) = {e:.5e}"),
                Some(prev) => print!(", ratio {:.3}", (e / prev).abs()),
            }
            previous = Some(e);
        }
        println!();
    }
    Ok(())
}
