// SPDX-License-Identifier: MIT

//! Simulation kernels on `[0,1]`, their limit shapes, and moduli of
//! continuity.
//!
//! A [`StepKernel`] stores values on the uniform grid `i/n`; its evaluation
//! is piecewise constant on the cells `[i/n, (i+1)/n)` and zero outside
//! `[0,1)`. An [`InterpKernel`] interpolates the same grid values linearly.
//! A [`LimitKernel`] is the scaling limit a kernel sequence converges to —
//! the fractional shape `γ t^{γ-1}`, a constant, or a tabulated function.
//!
//! The discrete modulus of continuity drives tightness arguments for
//! kernel-weighted partial sums; it only ever evaluates a kernel at grid
//! offsets `(q-i)/n` with `q-i < n`, which is why the step and interpolated
//! versions of the same grid agree on it *bit for bit* — a fact the test
//! suite asserts rather than assumes.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::adaptive_simpson;

/// Piecewise-constant kernel on the uniform grid `i/n`, `i = 0..=n`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StepKernel {
    /// Number of grid cells.
    pub n: usize,
    /// Grid values, `values[i] = k(i/n)`, length `n + 1`.
    pub values: Vec<f64>,
}

/// Piecewise-linear kernel sharing the grid values of a [`StepKernel`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InterpKernel {
    /// The underlying grid.
    pub base: StepKernel,
}

/// Limit shapes for kernel sequences.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum LimitKernel {
    /// `k(t) = γ t^{γ-1}` on `(0,1]`, zero at `t = 0`; integrates to 1.
    Fractional { gamma: f64 },
    /// `k(t) = c` on `[0,1]`.
    Constant { c: f64 },
    /// Values on a uniform grid over `[0,1]`, evaluated by linear
    /// interpolation.
    Tabulated { values: Vec<f64> },
}

/// Result of a modulus-of-continuity computation.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModulusReport {
    /// Power applied to increments.
    pub r: f64,
    /// Time-separation bound.
    pub delta: f64,
    /// The supremum value.
    pub value: f64,
}

/// Snap tolerance for grid-cell lookup: `t` within 5e-10 of a cell boundary
/// counts as the boundary, so that `eval(i/n)` returns `values[i]` even when
/// `i/n` is not exactly representable.
const GRID_SNAP: f64 = 5e-10;

impl StepKernel {
    /// Build from grid values (length at least 2, all finite).
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::Validation(format!(
                "a step kernel needs at least 2 grid values, got {}",
                values.len()
            )));
        }
        if let Some(bad) = values.iter().find(|v| !v.is_finite()) {
            return Err(Error::Validation(format!(
                "kernel grid values must be finite, found {bad}"
            )));
        }
        let n = values.len() - 1;
        Ok(Self { n, values })
    }

    /// Sample a function on the grid `i/n`.
    pub fn from_fn(f: impl Fn(f64) -> f64, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Validation("grid size must be positive".into()));
        }
        let values = (0..=n).map(|i| f(i as f64 / n as f64)).collect();
        Self::new(values)
    }

    /// Evaluate: `values[⌊nt⌋]` for `t` in `[0,1)`, zero outside.
    pub fn eval(&self, t: f64) -> f64 {
        if !(0.0..1.0).contains(&t) {
            return 0.0;
        }
        let u = t * self.n as f64 + GRID_SNAP;
        let i = u as usize;
        if i >= self.n {
            return 0.0;
        }
        self.values[i]
    }

    /// Grid value at integer offset `j`, zero outside `0..=n`. This is the
    /// quantity convolution sums and discrete moduli are built from.
    #[inline]
    pub fn grid_value(&self, j: isize) -> f64 {
        if j < 0 || j as usize > self.n {
            0.0
        } else {
            self.values[j as usize]
        }
    }
}

impl InterpKernel {
    /// Wrap a grid as a piecewise-linear kernel.
    pub fn new(base: StepKernel) -> Self {
        Self { base }
    }

    /// Evaluate by linear interpolation on `[0,1]`, zero outside. Unlike the
    /// step version, `t = 1` returns the last grid value.
    pub fn eval(&self, t: f64) -> f64 {
        if !(0.0..=1.0).contains(&t) {
            return 0.0;
        }
        let n = self.base.n;
        if t == 1.0 {
            return self.base.values[n];
        }
        let u = t * n as f64 + GRID_SNAP;
        let i = (u as usize).min(n - 1);
        let frac = (t * n as f64 - i as f64).clamp(0.0, 1.0);
        self.base.values[i] + frac * (self.base.values[i + 1] - self.base.values[i])
    }
}

impl LimitKernel {
    /// Fractional limit shape with exponent `gamma > 0`.
    pub fn fractional(gamma: f64) -> Result<Self> {
        if !(gamma > 0.0) || !gamma.is_finite() {
            return Err(Error::Domain(format!(
                "fractional kernel exponent must be positive, got {gamma}"
            )));
        }
        Ok(LimitKernel::Fractional { gamma })
    }

    /// Constant kernel `c` on `[0,1]`.
    pub fn constant(c: f64) -> Result<Self> {
        if !c.is_finite() {
            return Err(Error::Domain(format!(
                "constant kernel level must be finite, got {c}"
            )));
        }
        Ok(LimitKernel::Constant { c })
    }

    /// Tabulated kernel from uniform grid values over `[0,1]`.
    pub fn tabulated(values: Vec<f64>) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::Validation(format!(
                "a tabulated kernel needs at least 2 grid values, got {}",
                values.len()
            )));
        }
        if let Some(bad) = values.iter().find(|v| !v.is_finite()) {
            return Err(Error::Validation(format!(
                "tabulated kernel values must be finite, found {bad}"
            )));
        }
        Ok(LimitKernel::Tabulated { values })
    }

    /// Evaluate at `t`; zero outside `[0,1]`.
    pub fn eval(&self, t: f64) -> f64 {
        if !(0.0..=1.0).contains(&t) {
            return 0.0;
        }
        match self {
            LimitKernel::Fractional { gamma } => {
                if t == 0.0 {
                    0.0
                } else {
                    gamma * t.powf(gamma - 1.0)
                }
            }
            LimitKernel::Constant { c } => *c,
            LimitKernel::Tabulated { values } => {
                let n = values.len() - 1;
                if t == 1.0 {
                    return values[n];
                }
                let u = t * n as f64;
                let i = (u as usize).min(n - 1);
                let frac = u - i as f64;
                values[i] + frac * (values[i + 1] - values[i])
            }
        }
    }

    /// Running integral `∫₀ᵗ k(s) ds` for `t` in `[0,1]` (clamped outside).
    /// Closed form for the fractional and constant shapes, trapezoid rule
    /// for tabulated values.
    pub fn integral_to(&self, t: f64) -> f64 {
        let t = t.clamp(0.0, 1.0);
        match self {
            LimitKernel::Fractional { gamma } => t.powf(*gamma),
            LimitKernel::Constant { c } => c * t,
            LimitKernel::Tabulated { values } => {
                let n = values.len() - 1;
                let h = 1.0 / n as f64;
                let u = t * n as f64;
                let whole = (u as usize).min(n);
                let mut acc = 0.0;
                for i in 0..whole {
                    acc += 0.5 * h * (values[i] + values[i + 1]);
                }
                if whole < n {
                    let frac = u - whole as f64;
                    let a = values[whole];
                    let b = values[whole] + frac * (values[whole + 1] - values[whole]);
                    acc += 0.5 * frac * h * (a + b);
                }
                acc
            }
        }
    }
}

/// Normalized step kernel of a coefficient sequence at horizon `n`:
/// `values[i] = n·g_i / (g_0 + … + g_{n-1})`, so the kernel has unit mean on
/// `[0,1)`. This is the shape whose limit is the fractional kernel when the
/// coefficients are regularly varying. Requires `g.len() > n` and a nonzero
/// partial sum.
pub fn normalized_step_kernel(g: &[f64], n: usize) -> Result<StepKernel> {
    if g.len() <= n {
        return Err(Error::Range(format!(
            "coefficient horizon {} too short for grid size {n}",
            g.len()
        )));
    }
    if n == 0 {
        return Err(Error::Validation("grid size must be positive".into()));
    }
    let total: f64 = g[..n].iter().sum();
    if total == 0.0 || !total.is_finite() {
        return Err(Error::Validation(format!(
            "coefficient partial sum {total} cannot normalize a kernel"
        )));
    }
    let scale = n as f64 / total;
    let values = g[..=n].iter().map(|&v| v * scale).collect();
    StepKernel::new(values)
}

/// Raw coefficient step kernel: `values[i] = g_i` with no normalization.
/// With this kernel the grid convolution reproduces the coefficient process
/// itself, which is the right scaling for extreme-value and point-process
/// limits. Requires `g.len() > n`.
pub fn coeff_step_kernel(g: &[f64], n: usize) -> Result<StepKernel> {
    if g.len() <= n {
        return Err(Error::Range(format!(
            "coefficient horizon {} too short for grid size {n}",
            g.len()
        )));
    }
    if n == 0 {
        return Err(Error::Validation("grid size must be positive".into()));
    }
    StepKernel::new(g[..=n].to_vec())
}

fn check_modulus_args(r: f64, delta: f64) -> Result<()> {
    if !(r >= 1.0) || !r.is_finite() {
        return Err(Error::Domain(format!(
            "modulus power r must be at least 1, got {r}"
        )));
    }
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::Domain(format!(
            "modulus separation delta must lie in (0,1), got {delta}"
        )));
    }
    Ok(())
}

/// Discrete modulus of continuity of a step kernel:
///
/// ```text
/// ω̄(δ) = max over 0 <= p <= q <= n, q - p <= n·δ of
///         (1/n) Σ_{i=1..n} |k((q-i)/n) − k((p-i)/n)|^r
/// ```
///
/// Computed exactly over *all* admissible pairs in `O(n²δ)` by sliding the
/// inner sum in `p` for each fixed separation `w = q - p`: advancing `p` by
/// one changes the sum by two terms.
pub fn discrete_modulus(kernel: &StepKernel, r: u32, delta: f64) -> Result<ModulusReport> {
    check_modulus_args(r as f64, delta)?;
    let n = kernel.n;
    let span = (n as f64 * delta).floor() as usize;
    let v = |j: isize| kernel.grid_value(j);
    let term = |j: isize, w: isize| -> f64 {
        let d = v(j + w) - v(j);
        if r == 2 {
            d * d
        } else {
            d.abs().powi(r as i32)
        }
    };
    let mut best = 0.0f64;
    for w in 1..=span as isize {
        // The inner sum at (p, q = p+w) runs over j = p-i for i = 1..=n,
        // i.e. the window j ∈ [p-n, p-1]. Start at p = 0 and slide.
        let mut sum = 0.0;
        for j in -w..0 {
            sum += term(j, w);
        }
        best = best.max(sum);
        for p in 1..=(n as isize - w) {
            // Window gains j = p-1, loses j = p-1-n; terms with both
            // evaluations outside the grid are zero and skipped implicitly.
            sum += term(p - 1, w);
            let gone = p - 1 - n as isize;
            if gone + w >= 0 {
                sum -= term(gone, w);
            }
            best = best.max(sum);
        }
    }
    Ok(ModulusReport {
        r: r as f64,
        delta,
        value: best / n as f64,
    })
}

/// Discrete modulus of an interpolated kernel. The scan only evaluates grid
/// offsets `(q-i)/n` with `q-i <= n-1`, where the interpolated kernel equals
/// its step version exactly, so this delegates to the same computation and
/// agrees with [`discrete_modulus`] bit for bit.
pub fn discrete_modulus_interp(kernel: &InterpKernel, r: u32, delta: f64) -> Result<ModulusReport> {
    discrete_modulus(&kernel.base, r, delta)
}

/// Continuous modulus of continuity of a limit kernel:
///
/// ```text
/// ω(δ) = sup over |t - s| <= δ of ∫₀¹ |k(t-u) − k(s-u)|^r du
/// ```
///
/// The supremum is searched over all ordered pairs from a uniform grid of
/// `grid + 1` points with separation at most `δ`, plus the exact-separation
/// pairs `(s, s+δ)` for every grid `s` — including `(1-δ, 1)`, where the
/// supremum sits for increasing kernels. Integrals use composite Simpson
/// with 4096 panels.
pub fn continuous_modulus(
    kernel: &LimitKernel,
    r: f64,
    delta: f64,
    grid: usize,
) -> Result<ModulusReport> {
    check_modulus_args(r, delta)?;
    if grid < 16 {
        return Err(Error::Validation(format!(
            "modulus search grid must have at least 16 points, got {grid}"
        )));
    }
    const PANELS: usize = 4096;
    let nodes = PANELS + 1;
    let h = 1.0 / PANELS as f64;
    // Simpson weights h/3 · (1,4,2,...,2,4,1).
    let weight = |m: usize| -> f64 {
        if m == 0 || m == PANELS {
            h / 3.0
        } else if m % 2 == 1 {
            4.0 * h / 3.0
        } else {
            2.0 * h / 3.0
        }
    };
    let row = |shift: f64| -> Vec<f64> {
        (0..nodes)
            .map(|m| kernel.eval(shift - m as f64 * h))
            .collect()
    };
    let pair_value = |a: &[f64], b: &[f64]| -> f64 {
        let mut acc = 0.0;
        if r == 2.0 {
            for m in 0..nodes {
                let d = a[m] - b[m];
                acc += weight(m) * d * d;
            }
        } else {
            for m in 0..nodes {
                let d = (a[m] - b[m]).abs();
                acc += weight(m) * d.powf(r);
            }
        }
        acc
    };

    let g = grid;
    let rows: Vec<Vec<f64>> = (0..=g).map(|i| row(i as f64 / g as f64)).collect();
    let reach = (g as f64 * delta).floor() as usize;
    let mut best = 0.0f64;
    // Grid pairs within separation delta.
    for i in 0..=g {
        for j in (i + 1)..=(i + reach).min(g) {
            best = best.max(pair_value(&rows[i], &rows[j]));
        }
    }
    // Exact-separation pairs (s, s+delta), clamped at the right edge.
    for i in 0..=g {
        let s = i as f64 / g as f64;
        let t = (s + delta).min(1.0);
        let shifted = row(t);
        best = best.max(pair_value(&rows[i], &shifted));
    }
    // The boundary pair (1-delta, 1) — the maximizer for increasing shapes.
    let left = row(1.0 - delta);
    best = best.max(pair_value(&left, &rows[g]));
    Ok(ModulusReport {
        r,
        delta,
        value: best,
    })
}

/// Closed-form continuous quadratic modulus of the fractional kernel
/// `k(t) = γ t^{γ-1}`, `γ > 1`:
///
/// ```text
/// ω(δ) = γ² · [ (1 + (1-δ)^{2γ-1}) / (2γ-1) − 2 ∫₀^{1-δ} (δ+v)^{γ-1} v^{γ-1} dv ]
/// ```
///
/// attained at the boundary pair `(1-δ, 1)`. The cross integral is evaluated
/// exactly by binomial expansion when `γ` is an integer, otherwise by
/// adaptive Simpson quadrature.
pub fn fractional_modulus_closed_form(gamma: f64, delta: f64) -> Result<f64> {
    if !(gamma > 1.0) || !gamma.is_finite() {
        return Err(Error::Domain(format!(
            "closed-form modulus requires gamma > 1, got {gamma}"
        )));
    }
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::Domain(format!(
            "modulus separation delta must lie in (0,1), got {delta}"
        )));
    }
    let edge = 1.0 - delta;
    let cross = if gamma.fract() == 0.0 && gamma <= 21.0 {
        // (δ+v)^{k} v^{k} with k = γ-1 integer: expand (δ+v)^k binomially and
        // integrate term by term.
        let k = (gamma - 1.0) as usize;
        let mut acc = 0.0;
        let mut binom = 1.0f64;
        for j in 0..=k {
            let power = (k + 1 + j) as f64;
            acc += binom * delta.powi((k - j) as i32) * edge.powf(power) / power;
            binom *= (k - j) as f64 / (j + 1) as f64;
        }
        acc
    } else {
        let e = gamma - 1.0;
        adaptive_simpson(
            &|v| (delta + v).powf(e) * v.powf(e),
            0.0,
            edge,
            1e-13 * (1.0 + edge),
        )
    };
    Ok(gamma * gamma * ((1.0 + edge.powf(2.0 * gamma - 1.0)) / (2.0 * gamma - 1.0) - 2.0 * cross))
}

/// Mean squared grid jump `(1/n) Σ_{i<n} (values[i+1] − values[i])²` — the
/// quantity that must vanish for a kernel sequence to have negligible
/// discretization jumps.
pub fn jump_quadratic_mean(kernel: &StepKernel) -> f64 {
    let n = kernel.n;
    let mut acc = 0.0;
    for i in 0..n {
        let d = kernel.values[i + 1] - kernel.values[i];
        acc += d * d;
    }
    acc / n as f64
}

/// Supremum distance between an interpolated kernel and a limit shape,
/// estimated over the kernel grid, the cell midpoints, and a uniform
/// 8193-point grid.
pub fn sup_distance(kernel: &InterpKernel, limit: &LimitKernel) -> f64 {
    let n = kernel.base.n;
    let mut best = 0.0f64;
    let mut check = |t: f64| {
        let d = (kernel.eval(t) - limit.eval(t)).abs();
        if d > best {
            best = d;
        }
    };
    for i in 0..=n {
        check(i as f64 / n as f64);
        if i < n {
            check((i as f64 + 0.5) / n as f64);
        }
    }
    const FINE: usize = 8192;
    for i in 0..=FINE {
        check(i as f64 / FINE as f64);
    }
    best
}
