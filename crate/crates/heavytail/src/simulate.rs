// SPDX-License-Identifier: MIT

//! Path simulation, the exact middle/extreme decomposition, and series
//! simulation of stable limits.
//!
//! A simulated path carries `S̄_n(i/n) = Σ_{j<=i} k̄_n((i-j)/n)·X_j` together
//! with its closed-form centering sequence. [`decompose`] splits the centered
//! path into a middle (truncated, standardized) component and two extreme
//! components, an identity that holds as exact algebra at every grid point.
//! The series half of the module simulates stable processes from their atom
//! representation — uniform locations `V_i` and unit-rate arrival times `W_i`
//! with magnitudes `W_i^{-1/α}` — truncated at `W_i <= depth` and compensated
//! by a deterministic drift, along with kernel convolutions `k⋆L̇` against the
//! same atoms and a self-similarity sampler.

use serde::{Deserialize, Serialize};

use crate::dist::{
    centering_integral, truncated_moments, TailBalancedLaw, TruncatedMoments, TruncationWindow,
};
use crate::error::{Error, Result};
use crate::kernels::{LimitKernel, StepKernel};
use crate::numerics::CompensatedSum;
use crate::rng::{derive_seed, open01, replicate_stream, stream_from_seed, Stream};

/// Default series truncation: atoms are kept while `W_i <= 10⁴`. The tail
/// beyond the cut contributes `O(depth^{1/α - 1/2})` to the compensated sum
/// in mean square; the depth-coupling test exercises the convergence.
pub const DEFAULT_DEPTH: f64 = 1e4;

/// One simulated trajectory with its centering.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PathBundle {
    /// Number of innovations / grid cells.
    pub n: usize,
    /// Innovations `X_1..X_n`.
    pub innovations: Vec<f64>,
    /// `S̄_n(i/n)` for `i = 0..=n`; starts at 0.
    pub s_bar: Vec<f64>,
    /// Centering `s̄_n(i/n)` for `i = 0..=n`.
    pub center: Vec<f64>,
    /// The innovation law.
    pub law: TailBalancedLaw,
    /// The step kernel the path was convolved with.
    pub kernel: StepKernel,
}

/// The three components of a centered path: middle + upper + lower equals
/// `S̄_n − s̄_n` at every grid point.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Decomposition {
    /// Convolution of the window-truncated, `μ_n`-centered innovations;
    /// equals `√n·σ_n·M_n(i/n)`.
    pub middle: Vec<f64>,
    /// Convolution of the upper-tail innovations centered by `μ_n⁺`.
    pub upper: Vec<f64>,
    /// Convolution of the lower-tail innovations centered by `μ_n⁻`.
    pub lower: Vec<f64>,
    /// The truncation window the split was taken at.
    pub window: TruncationWindow,
    /// The window's closed-form moments (centerings and middle variance).
    pub moments: TruncatedMoments,
}

/// A truncated-series stable path: atoms, grid, and evaluated values.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LePagePath {
    /// Stability index in `(0,2)`.
    pub alpha: f64,
    /// Positive-jump weight.
    pub p: f64,
    /// Negative-jump weight.
    pub q: f64,
    /// Series cut: atoms kept while `W_i <= depth`.
    pub depth: f64,
    /// Atoms `(V_i, W_i)` of the positive branch, `W_i` strictly increasing.
    pub atoms: Vec<(f64, f64)>,
    /// Atoms of the independent negated branch.
    pub atoms_mirror: Vec<(f64, f64)>,
    /// Evaluation times in `[0,1]`.
    pub grid: Vec<f64>,
    /// Path values on the grid.
    pub values: Vec<f64>,
}

/// Compensated prefix sums `P_i = Σ_{l<i} k̄(l/n)`, `i = 0..=n`. `P_i` is the
/// weight the constant 1 picks up under the path convolution, so centering
/// sequences are multiples of it.
fn kernel_prefix(kernel: &StepKernel) -> Vec<f64> {
    let n = kernel.n;
    let mut out = Vec::with_capacity(n + 1);
    let mut acc = CompensatedSum::new();
    out.push(0.0);
    for l in 0..n {
        acc.add(kernel.values[l]);
        out.push(acc.value());
    }
    out
}

/// Dense path convolution `out[i] = Σ_{j=1..i} k̄((i-j)/n)·x_j` with
/// compensated summation, terms taken in increasing `j`.
fn convolve(kernel: &StepKernel, x: &[f64]) -> Vec<f64> {
    let n = x.len();
    let mut out = Vec::with_capacity(n + 1);
    out.push(0.0);
    for i in 1..=n {
        let mut acc = CompensatedSum::new();
        for (k, xv) in kernel.values[..i].iter().rev().zip(&x[..i]) {
            acc.add(k * xv);
        }
        out.push(acc.value());
    }
    out
}

/// Sparse variant of [`convolve`]: only the 1-based indices in `idx`
/// (sorted increasing) contribute. Summation order matches the dense loop.
fn convolve_at(kernel: &StepKernel, x: &[f64], idx: &[usize]) -> Vec<f64> {
    let n = x.len();
    let mut out = Vec::with_capacity(n + 1);
    out.push(0.0);
    for i in 1..=n {
        let mut acc = CompensatedSum::new();
        for &j in idx.iter().take_while(|&&j| j <= i) {
            acc.add(kernel.values[i - j] * x[j - 1]);
        }
        out.push(acc.value());
    }
    out
}

/// Simulate a path bundle: draw `X_1..X_n` from the law, convolve with the
/// kernel, and attach the closed-form centering `s̄_n(i/n) = I_n·P_i` where
/// `I_n` is the centering integral (taken as 0 when `n = 1`, where the
/// centering quantile range is empty).
pub fn simulate_path(
    law: &TailBalancedLaw,
    kernel: &StepKernel,
    n: usize,
    seed: u64,
) -> Result<PathBundle> {
    if n == 0 {
        return Err(Error::Domain("path length must be at least 1".into()));
    }
    if kernel.n != n {
        return Err(Error::Validation(format!(
            "kernel grid size {} does not match path length {n}",
            kernel.n
        )));
    }
    let integral = if n == 1 {
        0.0
    } else {
        centering_integral(law, n)?
    };
    let mut stream = stream_from_seed(seed);
    let innovations = law.sample(&mut stream, n);
    let s_bar = convolve(kernel, &innovations);
    let center = kernel_prefix(kernel)
        .into_iter()
        .map(|p| p * integral)
        .collect();
    Ok(PathBundle {
        n,
        innovations,
        s_bar,
        center,
        law: law.clone(),
        kernel: kernel.clone(),
    })
}

/// Split a centered path into middle and extreme components.
///
/// The middle component convolves `X_j·1_{[a_n,b_n]}(X_j) − μ_n`, the upper
/// `X_j·1_{(b_n,∞)}(X_j) − μ_n⁺`, the lower `X_j·1_{(-∞,a_n)}(X_j) − μ_n⁻`.
/// Each is assembled as (indicator convolution) − (centering)·(kernel
/// prefix): algebraically the same sum, but it keeps the terms shared with
/// `S̄_n` bit-aligned, so the identity middle + upper + lower = `S̄_n − s̄_n`
/// holds at the rounding floor of the part magnitudes.
///
/// The window must sit inside the centering quantile range
/// `[F^{-1}(1/n), F^{-1}(1-1/n)]`; otherwise the three centerings do not add
/// up to the centering integral and the identity misses the mean of the
/// uncovered slab. Windows from `truncation_window` satisfy this whenever
/// `min(p,q) >= m_n/n`.
pub fn decompose(bundle: &PathBundle, window: &TruncationWindow) -> Result<Decomposition> {
    let n = bundle.n;
    if window.n != n {
        return Err(Error::Validation(format!(
            "window horizon {} does not match path length {n}",
            window.n
        )));
    }
    let law = &bundle.law;
    let lo_q = law.quantile(1.0 / n as f64)?;
    let hi_q = law.quantile(1.0 - 1.0 / n as f64)?;
    if window.a_n < lo_q || hi_q < window.b_n {
        return Err(Error::Domain(format!(
            "truncation window [{}, {}] spills outside the centering range [{lo_q}, {hi_q}]; \
             the extreme tiles would not cover the centering integral",
            window.a_n, window.b_n
        )));
    }
    let moments = truncated_moments(law, window)?;
    if !(moments.sigma2 > 0.0) {
        return Err(Error::Domain(format!(
            "degenerate truncation window: middle variance {}",
            moments.sigma2
        )));
    }

    let x = &bundle.innovations;
    let kernel = &bundle.kernel;
    let (a, b) = (window.a_n, window.b_n);
    let masked: Vec<f64> = x
        .iter()
        .map(|&v| if (a..=b).contains(&v) { v } else { 0.0 })
        .collect();
    let upper_idx: Vec<usize> = (1..=n).filter(|&j| x[j - 1] > b).collect();
    let lower_idx: Vec<usize> = (1..=n).filter(|&j| x[j - 1] < a).collect();

    let prefix = kernel_prefix(kernel);
    let assemble = |raw: Vec<f64>, centering: f64| -> Vec<f64> {
        raw.into_iter()
            .zip(&prefix)
            .map(|(r, &p)| r - centering * p)
            .collect()
    };
    let middle = assemble(convolve(kernel, &masked), moments.mu);
    let upper = assemble(convolve_at(kernel, x, &upper_idx), moments.mu_plus);
    let lower = assemble(convolve_at(kernel, x, &lower_idx), moments.mu_minus);
    Ok(Decomposition {
        middle,
        upper,
        lower,
        window: *window,
        moments,
    })
}

/// Rescale the middle component to `M_n(i/n) = middle(i/n)/(√n·σ_n)`.
pub fn middle_values(decomp: &Decomposition) -> Result<Vec<f64>> {
    let sigma2 = decomp.moments.sigma2;
    if !(sigma2 > 0.0) {
        return Err(Error::Domain(format!(
            "middle variance must be positive, got {sigma2}"
        )));
    }
    let denom = (decomp.window.n as f64).sqrt() * sigma2.sqrt();
    Ok(decomp.middle.iter().map(|&v| v / denom).collect())
}

/// Rescaled path `(S̄_n(i/n) − s̄_n(i/n)) / F_*^{-1}(1-1/n)` for `i = 0..=n`
/// — the normalization under which the path converges to a stable limit.
pub fn rescaled_process(bundle: &PathBundle) -> Result<Vec<f64>> {
    let norm = bundle.law.star_quantile(1.0 - 1.0 / bundle.n as f64)?;
    Ok(bundle
        .s_bar
        .iter()
        .zip(&bundle.center)
        .map(|(&s, &c)| (s - c) / norm)
        .collect())
}

/// One-pass evaluation of the rescaled path at `t = 1` — the value
/// `rescaled_process(simulate_path(...))` would end with, without storing
/// the trajectory. Used by Monte Carlo endpoint studies.
pub fn path_endpoint_rescaled(
    law: &TailBalancedLaw,
    kernel: &StepKernel,
    n: usize,
    seed: u64,
) -> Result<f64> {
    if n == 0 {
        return Err(Error::Domain("path length must be at least 1".into()));
    }
    if kernel.n != n {
        return Err(Error::Validation(format!(
            "kernel grid size {} does not match path length {n}",
            kernel.n
        )));
    }
    let integral = if n == 1 {
        0.0
    } else {
        centering_integral(law, n)?
    };
    let norm = law.star_quantile(1.0 - 1.0 / n as f64)?;
    let mut stream = stream_from_seed(seed);
    let mut acc = CompensatedSum::new();
    let mut prefix = CompensatedSum::new();
    for j in 1..=n {
        let x = law.sample_one(&mut stream);
        acc.add(kernel.values[n - j] * x);
        prefix.add(kernel.values[j - 1]);
    }
    Ok((acc.value() - prefix.value() * integral) / norm)
}

/// One-pass evaluation of the standardized middle component at `t = 1`:
/// `M_n(1) = (√n·σ_n)^{-1} Σ_j k̄((n-j)/n)·(X_j·1_{[a_n,b_n]}(X_j) − μ_n)`.
pub fn middle_part_endpoint(
    law: &TailBalancedLaw,
    kernel: &StepKernel,
    window: &TruncationWindow,
    n: usize,
    seed: u64,
) -> Result<f64> {
    if kernel.n != n || window.n != n {
        return Err(Error::Validation(format!(
            "kernel grid {} / window horizon {} must both match path length {n}",
            kernel.n, window.n
        )));
    }
    let moments = truncated_moments(law, window)?;
    if !(moments.sigma2 > 0.0) {
        return Err(Error::Domain(format!(
            "degenerate truncation window: middle variance {}",
            moments.sigma2
        )));
    }
    let mut stream = stream_from_seed(seed);
    let mut acc = CompensatedSum::new();
    let mut prefix = CompensatedSum::new();
    for j in 1..=n {
        let x = law.sample_one(&mut stream);
        let xm = if (window.a_n..=window.b_n).contains(&x) {
            x
        } else {
            0.0
        };
        acc.add(kernel.values[n - j] * xm);
        prefix.add(kernel.values[j - 1]);
    }
    let denom = (n as f64).sqrt() * moments.sigma2.sqrt();
    Ok((acc.value() - prefix.value() * moments.mu) / denom)
}

fn check_stable_params(alpha: f64, p: f64, q: f64, depth: f64) -> Result<()> {
    if !(alpha > 0.0 && alpha < 2.0) {
        return Err(Error::Domain(format!(
            "stability index must lie in (0,2), got {alpha}"
        )));
    }
    if !(p >= 0.0 && q >= 0.0) || (p + q - 1.0).abs() > 1e-9 {
        return Err(Error::Domain(format!(
            "jump weights must be nonnegative with p + q = 1, got p = {p}, q = {q}"
        )));
    }
    if !(depth >= 1.0) {
        return Err(Error::Domain(format!(
            "series depth must be at least 1, got {depth}"
        )));
    }
    Ok(())
}

/// Draw the atom sequence of one branch: arrival times `W_i` as partial sums
/// of standard exponentials, kept while `W_i <= depth`, each with a uniform
/// location `V_i`. The location is drawn only for kept atoms, so a stream
/// run at a smaller depth is a prefix of the same stream run deeper — that
/// coupling is what the depth-convergence check relies on.
fn draw_atoms(stream: &mut Stream, depth: f64) -> Vec<(f64, f64)> {
    let mut atoms = Vec::new();
    let mut w = 0.0f64;
    loop {
        w += -open01(stream).ln();
        if w > depth {
            return atoms;
        }
        atoms.push((open01(stream), w));
    }
}

/// Compensator slope for one branch at series cut `depth` (`ε = 1/depth`):
/// `(α/(α-1))·(ε^{1/α-1} − 1)`, read as `−log ε` at `α = 1`.
fn compensator_slope(alpha: f64, depth: f64) -> f64 {
    if alpha == 1.0 {
        depth.ln()
    } else {
        alpha / (alpha - 1.0) * (depth.powf(1.0 - 1.0 / alpha) - 1.0)
    }
}

/// One branch of a kernel-convolved series at time `t`:
/// `Σ_i k(t-V_i)·W_i^{-1/α} − slope·∫₀ᵗ k`, atoms restricted to `V_i <= t`.
/// `mags[i]` caches `W_i^{-1/α}`.
fn branch_value(
    kernel: &LimitKernel,
    atoms: &[(f64, f64)],
    mags: &[f64],
    slope: f64,
    t: f64,
) -> f64 {
    let mut acc = CompensatedSum::new();
    for ((v, _), &m) in atoms.iter().zip(mags) {
        if *v <= t {
            acc.add(kernel.eval(t - v) * m);
        }
    }
    acc.value() - slope * kernel.integral_to(t)
}

/// Shared core of [`lepage_levy`] and [`fractional_levy`]: two independent
/// atom branches combined with weights `p^{1/α}` and `−q^{1/α}`.
fn series_paths(
    kernel: &LimitKernel,
    alpha: f64,
    p: f64,
    q: f64,
    depth: f64,
    grid: &[f64],
    seed: u64,
) -> Result<(Vec<f64>, Vec<(f64, f64)>, Vec<(f64, f64)>)> {
    check_stable_params(alpha, p, q, depth)?;
    if let Some(bad) = grid.iter().find(|t| !(0.0..=1.0).contains(*t)) {
        return Err(Error::Domain(format!(
            "evaluation times must lie in [0,1], got {bad}"
        )));
    }
    let mut stream_a = replicate_stream(seed, 0);
    let mut stream_b = replicate_stream(seed, 1);
    let atoms_a = draw_atoms(&mut stream_a, depth);
    let atoms_b = draw_atoms(&mut stream_b, depth);
    let inv_alpha = 1.0 / alpha;
    let mag = |atoms: &[(f64, f64)]| -> Vec<f64> {
        atoms.iter().map(|&(_, w)| w.powf(-inv_alpha)).collect()
    };
    let mags_a = mag(&atoms_a);
    let mags_b = mag(&atoms_b);
    let slope = compensator_slope(alpha, depth);
    let wp = p.powf(inv_alpha);
    let wq = q.powf(inv_alpha);
    let values = grid
        .iter()
        .map(|&t| {
            wp * branch_value(kernel, &atoms_a, &mags_a, slope, t)
                - wq * branch_value(kernel, &atoms_b, &mags_b, slope, t)
        })
        .collect();
    Ok((values, atoms_a, atoms_b))
}

/// Truncated-series stable path `L = p^{1/α}·L⁺ − q^{1/α}·L̃⁺` on the grid,
/// where `L⁺(s) = Σ 1{V_i<=s}·W_i^{-1/α} − slope·s` over atoms with
/// `W_i <= depth` and `L̃⁺` is an independent copy.
pub fn lepage_levy(
    alpha: f64,
    p: f64,
    q: f64,
    depth: f64,
    grid: &[f64],
    seed: u64,
) -> Result<LePagePath> {
    let unit = LimitKernel::constant(1.0)?;
    let (values, atoms, atoms_mirror) = series_paths(&unit, alpha, p, q, depth, grid, seed)?;
    Ok(LePagePath {
        alpha,
        p,
        q,
        depth,
        atoms,
        atoms_mirror,
        grid: grid.to_vec(),
        values,
    })
}

/// Fractional convolution `k⋆L̇` on the grid: each branch is
/// `Σ k(t-V_i)·W_i^{-1/α} − slope·∫₀ᵗk`, combined as in [`lepage_levy`].
/// With `k = Constant(1)` the output is identical to `lepage_levy` on the
/// same seed, since the two share the atom streams and arithmetic.
pub fn fractional_levy(
    kernel: &LimitKernel,
    alpha: f64,
    p: f64,
    q: f64,
    depth: f64,
    grid: &[f64],
    seed: u64,
) -> Result<Vec<f64>> {
    let (values, _, _) = series_paths(kernel, alpha, p, q, depth, grid, seed)?;
    Ok(values)
}

/// Linear drift removed from `L` to make it self-similar:
/// `(α/(α-1))·(p^{1/α} − q^{1/α})·s` for `α != 1`, and `(p−q)·s·log s` at
/// `α = 1`. For `α < 1` the same constant applies without the mean
/// interpretation.
fn levy_drift(alpha: f64, p: f64, q: f64, s: f64) -> f64 {
    let inv_alpha = 1.0 / alpha;
    if alpha == 1.0 {
        (p - q) * s * s.ln()
    } else {
        alpha / (alpha - 1.0) * (p.powf(inv_alpha) - q.powf(inv_alpha)) * s
    }
}

/// Draw `reps` samples of `L₀(t)` and, independently, `reps` samples of
/// `t^{1/α}·L₀(1)`, where `L₀` is the drift-corrected series path. Under
/// self-similarity the two sets share a distribution; the harness compares
/// them with a two-sample statistic.
pub fn scaling_check(
    alpha: f64,
    p: f64,
    q: f64,
    t: f64,
    reps: usize,
    seed: u64,
) -> Result<(Vec<f64>, Vec<f64>)> {
    check_stable_params(alpha, p, q, DEFAULT_DEPTH)?;
    if !(t > 0.0 && t <= 1.0) {
        return Err(Error::Domain(format!(
            "scaling time must lie in (0,1], got {t}"
        )));
    }
    if reps == 0 {
        return Err(Error::Domain("scaling check needs at least 1 replicate".into()));
    }
    let mut at_t = Vec::with_capacity(reps);
    for r in 0..reps {
        let path = lepage_levy(alpha, p, q, DEFAULT_DEPTH, &[t], derive_seed(seed, r as u64))?;
        at_t.push(path.values[0] - levy_drift(alpha, p, q, t));
    }
    let scale = t.powf(1.0 / alpha);
    let mut at_one = Vec::with_capacity(reps);
    for r in 0..reps {
        let seed_r = derive_seed(seed, (reps + r) as u64);
        let path = lepage_levy(alpha, p, q, DEFAULT_DEPTH, &[1.0], seed_r)?;
        at_one.push(scale * (path.values[0] - levy_drift(alpha, p, q, 1.0)));
    }
    Ok((at_t, at_one))
}
