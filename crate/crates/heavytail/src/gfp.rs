// SPDX-License-Identifier: MIT

//! Coefficient engine for (g,F)- and FARIMA-type moving averages.
//!
//! A FARIMA(`phi`, `gamma`, `theta`) specification describes the generating
//! function `g(x) = (1-x)^{-gamma}·Θ(x)/Φ(x)`; its Taylor coefficients `g_k`
//! are the moving-average weights of the process. The module computes the
//! coefficients by exact recursions, exposes the partial sums and
//! regular-variation diagnostics used by scaling limits, and implements the
//! second-order gamma-ratio expansion oracle that predicts `g_n` to relative
//! order `n^{-2}`.

use nalgebra::{Complex, DMatrix};
use serde::{Deserialize, Serialize};

use crate::dist::TailBalancedLaw;
use crate::error::{Error, Result};
use crate::numerics::{gamma_fn, ln_gamma};

/// Magnitude above which coefficient recursions refuse to continue: beyond
/// this point the caller should work with `ln_gamma`-based logarithmic
/// quantities instead of raw coefficients.
const COEFF_GUARD: f64 = 1e290;

/// Tolerance used when testing polynomial values against zero.
const POLY_ZERO_TOL: f64 = 1e-12;

/// Margin by which autoregressive roots must clear the unit circle.
const ROOT_MARGIN: f64 = 1e-8;

/// A FARIMA specification: fractional order `gamma` and the moving-average /
/// autoregressive polynomials `Θ`, `Φ` with coefficients constant-first.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FarimaSpec {
    /// Fractional integration order, positive.
    pub gamma: f64,
    /// Moving-average polynomial `Θ`, with `Θ(1) != 0`.
    pub theta: Vec<f64>,
    /// Autoregressive polynomial `Φ`, with `Φ(0) != 0` and all roots
    /// strictly outside the unit circle.
    pub phi: Vec<f64>,
}

/// A finite stretch of moving-average coefficients `g_0, g_1, …`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoeffSeries {
    /// Coefficients, indexed from 0.
    pub g: Vec<f64>,
    /// Regular-variation exponent the series is expected to follow, when
    /// known: `g_k ~ k^{gamma-1}·L(k)`.
    pub gamma_hint: Option<f64>,
}

/// Ingredients of the second-order expansion of `Γ(k+d)/Γ(k+1)` and of the
/// coefficient asymptotics built on it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExpansionOracle {
    /// Regular-variation order `d > 1`.
    pub d: f64,
    /// Expansion order, 1 or 2.
    pub m: usize,
    /// Coefficients `q_0..q_m` of the expansion of `(e^t - 1)^{-d}` at 0,
    /// in the sign convention with `q_1 = d/2`.
    pub q_coeffs: Vec<f64>,
    /// `Q_j = (d-1)(d-2)…(d-j)·q_j`, the weights of the gamma-ratio
    /// expansion `h_m(k) = Σ_j Q_j k^{d-1-j}`.
    #[serde(rename = "Q_coeffs")]
    pub cap_q_coeffs: Vec<f64>,
    /// Power moments `S_p = Σ_k k^p·A_k` of `A = Θ/Φ`, for `p = 0..m`.
    pub a_moments: Vec<f64>,
}

/// Evaluate a constant-first polynomial by Horner's rule.
fn eval_poly(coeffs: &[f64], x: f64) -> f64 {
    let mut acc = 0.0;
    for &c in coeffs.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

impl FarimaSpec {
    /// Validate and build a specification.
    ///
    /// Requirements: `gamma > 0`; `Θ` nonempty with `Θ(1) != 0` (a zero at 1
    /// would change the regular-variation class); `Φ` nonempty with
    /// `Φ(0) != 0` and all roots strictly outside the unit circle, checked
    /// through the eigenvalues of the companion matrix.
    pub fn new(gamma: f64, theta: Vec<f64>, phi: Vec<f64>) -> Result<Self> {
        if !(gamma > 0.0) || !gamma.is_finite() {
            return Err(Error::Domain(format!(
                "fractional order gamma must be positive, got {gamma}"
            )));
        }
        if theta.is_empty() || theta.iter().any(|c| !c.is_finite()) {
            return Err(Error::Validation(
                "moving-average polynomial must be nonempty with finite coefficients".into(),
            ));
        }
        if phi.is_empty() || phi.iter().any(|c| !c.is_finite()) {
            return Err(Error::Validation(
                "autoregressive polynomial must be nonempty with finite coefficients".into(),
            ));
        }
        if eval_poly(&theta, 1.0).abs() <= POLY_ZERO_TOL {
            return Err(Error::Validation(
                "moving-average polynomial vanishes at 1; the coefficient series would \
                 leave its regular-variation class"
                    .into(),
            ));
        }
        if phi[0].abs() <= POLY_ZERO_TOL {
            return Err(Error::Validation(
                "autoregressive polynomial must not vanish at 0".into(),
            ));
        }
        for root in polynomial_roots(&phi) {
            if root.norm() <= 1.0 + ROOT_MARGIN {
                return Err(Error::Validation(format!(
                    "autoregressive root {root} does not lie strictly outside the unit circle"
                )));
            }
        }
        Ok(Self { gamma, theta, phi })
    }

    /// Generating-function value `(1-x)^{-gamma}·Θ(x)/Φ(x)` for `x < 1`.
    pub fn value_at(&self, x: f64) -> Result<f64> {
        if !(x < 1.0) {
            return Err(Error::Domain(format!(
                "generating function diverges at x = {x}; argument must be below 1"
            )));
        }
        Ok((1.0 - x).powf(-self.gamma) * eval_poly(&self.theta, x) / eval_poly(&self.phi, x))
    }
}

/// Complex roots of a constant-first polynomial via the companion matrix.
/// Trailing (near-)zero leading coefficients are trimmed; constants have no
/// roots.
fn polynomial_roots(coeffs: &[f64]) -> Vec<Complex<f64>> {
    let mut deg = coeffs.len() - 1;
    while deg > 0 && coeffs[deg].abs() <= POLY_ZERO_TOL {
        deg -= 1;
    }
    if deg == 0 {
        return Vec::new();
    }
    let lead = coeffs[deg];
    let companion = DMatrix::from_fn(deg, deg, |r, c| {
        if c == deg - 1 {
            -coeffs[r] / lead
        } else if r == c + 1 {
            1.0
        } else {
            0.0
        }
    });
    companion.complex_eigenvalues().iter().copied().collect()
}

/// Coefficients `g_0..g_N` of `(1-x)^{-d}` by the exact ratio recursion
/// `g_{k+1} = g_k (k+d)/(k+1)`.
///
/// `d` must not be a nonpositive integer (the series would terminate in
/// zeros and every ratio diagnostic would degenerate). Magnitudes beyond
/// 1e290 abort with `Unsupported`; at such sizes callers should switch to
/// logarithmic quantities via `ln_gamma`.
pub fn binomial_coeffs(d: f64, n_max: usize) -> Result<CoeffSeries> {
    if !d.is_finite() || (d <= 0.0 && d.fract() == 0.0) {
        return Err(Error::Domain(format!(
            "binomial order must not be a nonpositive integer, got {d}"
        )));
    }
    let mut g = Vec::with_capacity(n_max + 1);
    g.push(1.0);
    for k in 0..n_max {
        let kf = k as f64;
        let next = g[k] * (kf + d) / (kf + 1.0);
        if next.abs() > COEFF_GUARD {
            return Err(Error::Unsupported(format!(
                "binomial coefficient exceeds 1e290 at index {}; \
                 work with log-space quantities for horizons this deep",
                k + 1
            )));
        }
        g.push(next);
    }
    Ok(CoeffSeries {
        g,
        gamma_hint: Some(d),
    })
}

/// Coefficients `g_0..g_N` of a FARIMA specification: the binomial series of
/// order `gamma` convolved with `Θ` and deconvolved by `Φ` through the
/// standard linear recursion.
pub fn farima_coeffs(spec: &FarimaSpec, n_max: usize) -> Result<CoeffSeries> {
    let binom = binomial_coeffs(spec.gamma, n_max)?;
    let b = &binom.g;
    let theta = &spec.theta;
    let phi = &spec.phi;
    let mut g = Vec::with_capacity(n_max + 1);
    for k in 0..=n_max {
        let mut num = 0.0;
        for (j, &t) in theta.iter().enumerate().take(k + 1) {
            num += t * b[k - j];
        }
        for (j, &f) in phi.iter().enumerate().skip(1).take(k) {
            num -= f * g[k - j];
        }
        let next = num / phi[0];
        if next.abs() > COEFF_GUARD {
            return Err(Error::Unsupported(format!(
                "coefficient exceeds 1e290 at index {k}; \
                 work with log-space quantities for horizons this deep"
            )));
        }
        g.push(next);
    }
    Ok(CoeffSeries {
        g,
        gamma_hint: Some(spec.gamma),
    })
}

/// Partial sum `g_{[0,x)} = Σ_{0 <= i < x} g_i` for real `x >= 0` — the
/// count of included terms is `⌈x⌉`. Errors if `x` is negative or reaches
/// beyond the stored horizon.
pub fn partial_sums(series: &CoeffSeries, x: f64) -> Result<f64> {
    if !(x >= 0.0) {
        return Err(Error::Domain(format!(
            "partial-sum endpoint must be nonnegative, got {x}"
        )));
    }
    let count = x.ceil() as usize;
    if count > series.g.len() {
        return Err(Error::Range(format!(
            "partial sum to {x} needs {count} coefficients, horizon has {}",
            series.g.len()
        )));
    }
    Ok(series.g[..count].iter().sum())
}

/// Largest increment at separation `r`:
/// `Ω(r) = max_{0 <= j <= n-r} |g_{j+r} − g_j|`, with `n` the last stored
/// index. Errors if `r` exceeds the horizon.
pub fn increment_sup(series: &CoeffSeries, r: usize) -> Result<f64> {
    let n = series.g.len() - 1;
    if r > n {
        return Err(Error::Range(format!(
            "increment separation {r} exceeds the coefficient horizon {n}"
        )));
    }
    let mut best = 0.0f64;
    for j in 0..=(n - r) {
        best = best.max((series.g[j + r] - series.g[j]).abs());
    }
    Ok(best)
}

/// Normalized regular-variation defect `d_k = k·(g_{k+1}/g_k − 1) − (gamma−1)`
/// for `k = 0..len-2`. A vanishing defect is the ratio form of
/// `g_k ~ k^{gamma-1}·L(k)`. Indices with `g_k = 0` cannot be diagnosed and
/// are marked NaN.
pub fn nrv_defect(series: &CoeffSeries, gamma: f64) -> Vec<f64> {
    let g = &series.g;
    (0..g.len() - 1)
        .map(|k| {
            if g[k] == 0.0 {
                f64::NAN
            } else {
                k as f64 * (g[k + 1] / g[k] - 1.0) - (gamma - 1.0)
            }
        })
        .collect()
}

/// Centering sequence `c_{n,j} = g_{[0,j)} · ∫ x dF` for `j = 0..=n`, with
/// the integral taken in closed form over the central quantile range of the
/// law (see [`crate::dist::centering_integral`]). Needs at least `n` stored
/// coefficients.
pub fn centering_sequence(
    law: &TailBalancedLaw,
    series: &CoeffSeries,
    n: usize,
) -> Result<Vec<f64>> {
    if series.g.len() < n {
        return Err(Error::Range(format!(
            "centering to step {n} needs {n} coefficients, horizon has {}",
            series.g.len()
        )));
    }
    let integral = crate::dist::centering_integral(law, n)?;
    let mut out = Vec::with_capacity(n + 1);
    let mut acc = 0.0;
    out.push(0.0);
    for &gk in series.g.iter().take(n) {
        acc += gk;
        out.push(acc * integral);
    }
    Ok(out)
}

/// Coefficients `q_0..q_m` of the expansion of `(e^t − 1)^{-d}` around 0,
/// obtained by composing the series of `t/(e^t − 1)` with `exp(d·log(·))`
/// and flipping to the convention in which `q_1 = d/2`.
fn q_series(d: f64, m: usize) -> Vec<f64> {
    // t/(e^t - 1) = 1 - t/2 + t²/12 + O(t⁴).
    const BASE_1: f64 = -0.5;
    const BASE_2: f64 = 1.0 / 12.0;
    // log(1 + w) to second order in the series variable.
    let l1 = BASE_1;
    let l2 = BASE_2 - 0.5 * BASE_1 * BASE_1;
    // exp(d·log) to second order.
    let c1 = d * l1;
    let c2 = d * l2 + 0.5 * c1 * c1;
    let comp = [1.0, c1, c2];
    (0..=m)
        .map(|j| if j % 2 == 0 { comp[j] } else { -comp[j] })
        .collect()
}

/// Falling-factorial weights `Q_j = (d-1)(d-2)…(d-j)·q_j`.
fn cap_q_series(d: f64, q: &[f64]) -> Vec<f64> {
    let mut fall = 1.0;
    q.iter()
        .enumerate()
        .map(|(j, &qj)| {
            if j > 0 {
                fall *= d - j as f64;
            }
            fall * qj
        })
        .collect()
}

/// Build the expansion oracle for a specification with `d = spec.gamma > 1`,
/// at order `m` (1 or 2).
///
/// The `A`-moments `S_p = Σ_k k^p A_k` of `A = Θ/Φ` are summed by the
/// division recursion until geometric convergence; they exist because the
/// roots of `Φ` lie strictly outside the unit circle.
pub fn expansion_oracle(spec: &FarimaSpec, m: usize) -> Result<ExpansionOracle> {
    if !(1..=2).contains(&m) {
        return Err(Error::Unsupported(format!(
            "expansion order must be 1 or 2, got {m}"
        )));
    }
    let d = spec.gamma;
    if !(d > 1.0) {
        return Err(Error::Domain(format!(
            "the expansion oracle requires order d > 1, got {d}"
        )));
    }
    let a_moments = a_power_moments(spec, m)?;
    let q_coeffs = q_series(d, m);
    let cap_q_coeffs = cap_q_series(d, &q_coeffs);
    Ok(ExpansionOracle {
        d,
        m,
        q_coeffs,
        cap_q_coeffs,
        a_moments,
    })
}

/// Power moments `S_p = Σ k^p A_k`, `p = 0..=m`, of the Taylor coefficients
/// of `A = Θ/Φ`.
fn a_power_moments(spec: &FarimaSpec, m: usize) -> Result<Vec<f64>> {
    const MAX_TERMS: usize = 200_000;
    let theta = &spec.theta;
    let phi = &spec.phi;
    let mut s = vec![0.0f64; m + 1];
    let mut a: Vec<f64> = Vec::new();
    let mut quiet = 0usize;
    for k in 0..MAX_TERMS {
        let mut num = if k < theta.len() { theta[k] } else { 0.0 };
        for (j, &f) in phi.iter().enumerate().skip(1).take(k) {
            num -= f * a[k - j];
        }
        let ak = num / phi[0];
        a.push(ak);
        let kf = k as f64;
        let mut weight = 1.0;
        for sp in s.iter_mut() {
            *sp += weight * ak;
            weight *= kf;
        }
        // Converged once the heaviest-weighted term stalls well below the
        // accumulated scale, past the direct polynomial range.
        let top = ak.abs() * kf.powi(m as i32);
        if k >= theta.len() && top <= 1e-16 * (1.0 + s[m].abs()) {
            quiet += 1;
            if quiet >= 3 {
                return Ok(s);
            }
        } else {
            quiet = 0;
        }
    }
    Err(Error::Validation(
        "A-moment summation did not converge; an autoregressive root is too close \
         to the unit circle"
            .into(),
    ))
}

impl ExpansionOracle {
    /// Gamma-ratio approximation `h_m(k) = Σ_j Q_j·k^{d-1-j}`.
    pub fn h(&self, k: f64) -> f64 {
        let mut acc = 0.0;
        for (j, &qj) in self.cap_q_coeffs.iter().enumerate() {
            acc += qj * k.powf(self.d - 1.0 - j as f64);
        }
        acc
    }

    /// Coefficients of the prediction polynomial `P_m`, constant first:
    /// `g_n ≈ n^{d-1}·P_m(1/n)` with
    /// `P_m(y) = Γ(d)^{-1}·(c_0 + c_1 y + … + c_m y^m)`.
    pub fn p_coeffs(&self) -> Vec<f64> {
        let d = self.d;
        let s = &self.a_moments;
        let mut c = Vec::with_capacity(self.m + 1);
        c.push(s[0]);
        if self.m >= 1 {
            c.push((d - 1.0) * (0.5 * d * s[0] - s[1]));
        }
        if self.m >= 2 {
            let q2 = self.q_coeffs[2];
            c.push((d - 1.0) * (d - 2.0) * (0.5 * s[2] - 0.5 * d * s[1] + q2 * s[0]));
        }
        let norm = gamma_fn(d);
        c.into_iter().map(|v| v / norm).collect()
    }

    /// Evaluate `P_m(y)`.
    pub fn p_eval(&self, y: f64) -> f64 {
        eval_poly(&self.p_coeffs(), y)
    }
}

/// Exact gamma ratio `Γ(k+d)/Γ(k+1)` next to its order-`m` expansion
/// `h_m(k)`; returns `(exact, approximation)`. Requires `k >= 1`, `d > 1`,
/// `m` in `{1, 2}`.
pub fn gamma_ratio_check(d: f64, m: usize, k: f64) -> Result<(f64, f64)> {
    if !(k >= 1.0) {
        return Err(Error::Domain(format!(
            "gamma-ratio argument must be at least 1, got {k}"
        )));
    }
    if !(1..=2).contains(&m) {
        return Err(Error::Unsupported(format!(
            "expansion order must be 1 or 2, got {m}"
        )));
    }
    if !(d > 1.0) || !d.is_finite() {
        return Err(Error::Domain(format!(
            "gamma-ratio order must satisfy d > 1, got {d}"
        )));
    }
    let exact = (ln_gamma(k + d) - ln_gamma(k + 1.0)).exp();
    let q = q_series(d, m);
    let cap_q = cap_q_series(d, &q);
    let mut approx = 0.0;
    for (j, &qj) in cap_q.iter().enumerate() {
        approx += qj * k.powf(d - 1.0 - j as f64);
    }
    Ok((exact, approx))
}

/// Scaled prediction residual
/// `e_m(n) = (g_n − n^{d-1}·P_m(1/n)) / n^{d-1-m}`.
///
/// Under the expansion, `e_m(n)` converges at the rate `1/n`, so doubling
/// `n` should roughly halve it — the ratio test the acceptance suite runs.
pub fn expansion_residual(spec: &FarimaSpec, m: usize, n: usize) -> Result<f64> {
    if n == 0 {
        return Err(Error::Domain("residual index must be positive".into()));
    }
    let oracle = expansion_oracle(spec, m)?;
    let coeffs = farima_coeffs(spec, n)?;
    let g_n = coeffs.g[n];
    let nf = n as f64;
    let predicted = nf.powf(oracle.d - 1.0) * oracle.p_eval(1.0 / nf);
    Ok((g_n - predicted) / nf.powf(oracle.d - 1.0 - m as f64))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn plain(gamma: f64) -> FarimaSpec {
        FarimaSpec::new(gamma, vec![1.0], vec![1.0]).unwrap()
    }

    #[test]
    fn binomial_small_orders_are_exact() {
        let g = binomial_coeffs(0.5, 3).unwrap().g;
        assert_eq!(g, vec![1.0, 0.5, 0.375, 0.3125]);
        let g = binomial_coeffs(1.5, 3).unwrap().g;
        assert_eq!(g, vec![1.0, 1.5, 1.875, 2.1875]);
        // d = 2 gives g_k = k+1 with no rounding at all.
        let g = binomial_coeffs(2.0, 100).unwrap().g;
        for (k, &v) in g.iter().enumerate() {
            assert_eq!(v, (k + 1) as f64);
        }
    }

    #[test]
    fn binomial_matches_gamma_ratio() {
        // g_k = Γ(k+d)/(Γ(d)Γ(k+1)); reference ratio from arbitrary
        // precision: Γ(101.3)/Γ(101) = 3.98882167789204012622… · Γ(1.3).
        let g = binomial_coeffs(1.3, 100).unwrap().g;
        let want = 3.988_821_677_892_040_126_22 / gamma_fn(1.3);
        assert!((g[100] / want - 1.0).abs() < 1e-12);
    }

    #[test]
    fn binomial_rejects_nonpositive_integers() {
        assert!(binomial_coeffs(0.0, 5).is_err());
        assert!(binomial_coeffs(-3.0, 5).is_err());
        assert!(binomial_coeffs(-2.5, 5).is_ok());
    }

    #[test]
    fn farima_convolution_example() {
        let spec = FarimaSpec::new(1.5, vec![1.0, 0.5], vec![1.0]).unwrap();
        let g = farima_coeffs(&spec, 2).unwrap().g;
        assert_eq!(g, vec![1.0, 2.0, 2.625]);
    }

    #[test]
    fn farima_division_matches_series_product() {
        // 1/Φ with Φ = 1 − 0.2x has coefficients 0.2^k; the recursion must
        // reproduce the explicit convolution Σ_j b_j·0.2^{k-j}.
        let spec = FarimaSpec::new(1.5, vec![1.0], vec![1.0, -0.2]).unwrap();
        let g = farima_coeffs(&spec, 30).unwrap().g;
        let b = binomial_coeffs(1.5, 30).unwrap().g;
        for k in 0..=30usize {
            let direct: f64 = (0..=k).map(|j| b[j] * 0.2f64.powi((k - j) as i32)).sum();
            assert!(
                (g[k] / direct - 1.0).abs() < 1e-12,
                "k={k}: {} vs {direct}",
                g[k]
            );
        }
    }

    #[test]
    fn spec_validation() {
        assert!(FarimaSpec::new(0.0, vec![1.0], vec![1.0]).is_err());
        assert!(FarimaSpec::new(1.5, vec![], vec![1.0]).is_err());
        assert!(FarimaSpec::new(1.5, vec![1.0, -1.0], vec![1.0]).is_err()); // Θ(1) = 0
        assert!(FarimaSpec::new(1.5, vec![1.0], vec![0.0, 1.0]).is_err()); // Φ(0) = 0
        assert!(FarimaSpec::new(1.5, vec![1.0], vec![1.0, -1.0]).is_err()); // root at 1
        assert!(FarimaSpec::new(1.5, vec![1.0], vec![1.0, -2.0]).is_err()); // root at 0.5
        assert!(FarimaSpec::new(1.5, vec![1.0], vec![1.0, -0.9]).is_ok());
        // Complex root pair with modulus 1/√0.5 > 1.
        assert!(FarimaSpec::new(1.5, vec![1.0], vec![1.0, -0.2, 0.5]).is_ok());
        // Complex root pair with modulus 1/√2 < 1.
        assert!(FarimaSpec::new(1.5, vec![1.0], vec![1.0, -0.2, 2.0]).is_err());
    }

    #[test]
    fn generating_function_value() {
        let spec = FarimaSpec::new(1.5, vec![1.0, 0.5], vec![1.0, -0.2]).unwrap();
        let got = spec.value_at(0.5).unwrap();
        let want = 0.5f64.powf(-1.5) * 1.25 / 0.9;
        assert!((got / want - 1.0).abs() < 1e-14);
        assert!(spec.value_at(1.0).is_err());
    }

    #[test]
    fn partial_sums_count_convention() {
        let series = CoeffSeries {
            g: vec![1.0, 2.0, 4.0, 8.0],
            gamma_hint: None,
        };
        assert_eq!(partial_sums(&series, 0.0).unwrap(), 0.0);
        assert_eq!(partial_sums(&series, 0.5).unwrap(), 1.0);
        assert_eq!(partial_sums(&series, 2.0).unwrap(), 3.0);
        assert_eq!(partial_sums(&series, 2.5).unwrap(), 7.0);
        assert_eq!(partial_sums(&series, 4.0).unwrap(), 15.0);
        assert!(partial_sums(&series, 4.5).is_err());
        assert!(partial_sums(&series, -1.0).is_err());
    }

    #[test]
    fn increment_sup_bound() {
        // For a monotone series, Ω(r) <= r·Ω(1).
        let series = binomial_coeffs(1.5, 200).unwrap();
        let omega1 = increment_sup(&series, 1).unwrap();
        for r in [2usize, 5, 17, 100] {
            let omega = increment_sup(&series, r).unwrap();
            assert!(omega <= r as f64 * omega1 * (1.0 + 1e-12), "r={r}");
        }
        assert_eq!(increment_sup(&series, 0).unwrap(), 0.0);
        assert!(increment_sup(&series, 201).is_err());
    }

    #[test]
    fn nrv_defect_binomial_identity() {
        // For the binomial series the defect is exactly −(γ−1)/(k+1).
        let gamma = 1.5;
        let series = binomial_coeffs(gamma, 500).unwrap();
        let d = nrv_defect(&series, gamma);
        for (k, &dk) in d.iter().enumerate() {
            let want = -(gamma - 1.0) / (k as f64 + 1.0);
            assert!((dk - want).abs() < 1e-12, "k={k}: {dk} vs {want}");
        }
    }

    #[test]
    fn nrv_defect_vanishes_for_farima() {
        let spec = FarimaSpec::new(1.5, vec![1.0, 0.5], vec![1.0, -0.2]).unwrap();
        let series = farima_coeffs(&spec, 10_001).unwrap();
        let d = nrv_defect(&series, 1.5);
        assert!(d[10_000].abs() < 0.01, "defect {}", d[10_000]);
    }

    #[test]
    fn nrv_defect_marks_zeros() {
        let series = CoeffSeries {
            g: vec![1.0, 0.0, 2.0],
            gamma_hint: None,
        };
        let d = nrv_defect(&series, 1.5);
        assert!(!d[0].is_nan());
        assert!(d[1].is_nan());
    }

    #[test]
    fn centering_sequence_prefix_relation() {
        let law = TailBalancedLaw::new(1.5, 0.7).unwrap();
        let series = binomial_coeffs(1.2, 64).unwrap();
        let n = 64;
        let c = centering_sequence(&law, &series, n).unwrap();
        assert_eq!(c.len(), n + 1);
        assert_eq!(c[0], 0.0);
        let integral = crate::dist::centering_integral(&law, n).unwrap();
        for j in 0..n {
            let inc = c[j + 1] - c[j];
            assert!((inc - integral * series.g[j]).abs() < 1e-12 * (1.0 + inc.abs()));
        }
        // A symmetric law centers to zero identically.
        let sym = TailBalancedLaw::symmetric(1.5).unwrap();
        let c0 = centering_sequence(&sym, &series, n).unwrap();
        assert!(c0.iter().all(|&v| v == 0.0));
    }

    #[test]
    fn q_series_closed_forms() {
        for &d in &[1.3f64, 1.5, 2.0, 2.5, 1.7] {
            let q = q_series(d, 2);
            assert_eq!(q[0], 1.0);
            assert_eq!(q[1], 0.5 * d);
            let want = d * (3.0 * d - 1.0) / 24.0;
            assert!((q[2] - want).abs() < 1e-15 * (1.0 + want.abs()));
        }
    }

    #[test]
    fn a_moments_geometric_case() {
        // A = (1+0.5x)/(1−0.5x): S_0 = 3, S_1 = 4, S_2 = 12.
        let spec = FarimaSpec::new(1.5, vec![1.0, 0.5], vec![1.0, -0.5]).unwrap();
        let oracle = expansion_oracle(&spec, 2).unwrap();
        let want = [3.0, 4.0, 12.0];
        for (p, &w) in want.iter().enumerate() {
            assert!(
                (oracle.a_moments[p] / w - 1.0).abs() < 1e-10,
                "S_{p} = {}",
                oracle.a_moments[p]
            );
        }
    }

    #[test]
    fn prediction_polynomial_first_order() {
        // d = 3/2, Θ = 1 + x/2, Φ = 1: the unnormalized bracket of P_1 is
        // 3/2 + 5x/16, i.e. Γ(d)·P_1 has coefficients (1.5, 0.3125).
        let spec = FarimaSpec::new(1.5, vec![1.0, 0.5], vec![1.0]).unwrap();
        let oracle = expansion_oracle(&spec, 1).unwrap();
        let p = oracle.p_coeffs();
        let norm = gamma_fn(1.5);
        assert!((p[0] * norm - 1.5).abs() < 1e-12);
        assert!((p[1] * norm - 0.3125).abs() < 1e-12);
    }

    #[test]
    fn gamma_ratio_second_order_error() {
        // d = 3/2, k = 100: h_1(k) = 10.0375 and the true ratio is
        // 10.0374454005688… — the gap matches Q_2·k^{d-3}.
        let (exact, approx) = gamma_ratio_check(1.5, 1, 100.0).unwrap();
        assert!((approx - 10.0375).abs() < 1e-12);
        assert!((exact - 10.037_445_400_568_830_801).abs() < 1e-9);
        let q2 = cap_q_series(1.5, &q_series(1.5, 2))[2];
        let predicted_gap = q2 * 100f64.powf(1.5 - 3.0);
        assert!(((exact - approx) / predicted_gap - 1.0).abs() < 0.05);
    }

    #[test]
    fn gamma_ratio_integer_order_is_exact() {
        // d = 2: Γ(k+2)/Γ(k+1) = k+1 and h_1(k) = k+1 with zero float error.
        for &k in &[100.0f64, 1000.0, 10_000.0] {
            let (exact, approx) = gamma_ratio_check(2.0, 1, k).unwrap();
            assert_eq!(approx, k + 1.0);
            assert!((exact / (k + 1.0) - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn gamma_ratio_error_constant_is_stable() {
        // C_k = |exact − h_1(k)|·k^{3-d} should be flat in k (it converges
        // to |Q_2|).
        let d = 1.3;
        let mut cs = Vec::new();
        for &k in &[100.0f64, 1000.0, 10_000.0] {
            let (exact, approx) = gamma_ratio_check(d, 1, k).unwrap();
            cs.push((exact - approx).abs() * k.powf(3.0 - d));
        }
        let max = cs.iter().cloned().fold(f64::MIN, f64::max);
        let min = cs.iter().cloned().fold(f64::MAX, f64::min);
        assert!(max / min < 1.05, "constants {cs:?}");
    }

    #[test]
    fn expansion_residual_halves_with_n() {
        let spec = FarimaSpec::new(1.5, vec![1.0, 0.5], vec![1.0]).unwrap();
        let e1 = expansion_residual(&spec, 1, 512).unwrap();
        let e2 = expansion_residual(&spec, 1, 1024).unwrap();
        let ratio = (e2 / e1).abs();
        assert!(
            ratio > 0.3 && ratio < 0.75,
            "ratio {ratio} (e1 = {e1}, e2 = {e2})"
        );
    }

    #[test]
    fn expansion_residual_integer_order_is_zero() {
        // d = 2, Θ = Φ = 1: g_n = n+1, P_1(y) = 1 + y exactly, and on a
        // dyadic grid the float evaluation cancels to literal zero.
        let spec = plain(2.0);
        for &n in &[512usize, 1024, 4096] {
            assert_eq!(expansion_residual(&spec, 1, n).unwrap(), 0.0);
        }
    }

    #[test]
    fn oracle_guards() {
        assert!(expansion_oracle(&plain(0.9), 1).is_err());
        assert!(expansion_oracle(&plain(1.5), 0).is_err());
        assert!(expansion_oracle(&plain(1.5), 3).is_err());
        assert!(gamma_ratio_check(1.5, 1, 0.5).is_err());
    }
}
