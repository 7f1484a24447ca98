// SPDX-License-Identifier: MIT

//! Seeded Monte Carlo experiments and the numerical acceptance suite.
//!
//! An [`ExperimentSpec`] names one of five experiment kinds — `gaussianity`,
//! `stable-limit`, `extremes`, `point-counts`, `expansion` — and
//! [`run_experiment`] executes its replicates in parallel, aggregating into a
//! [`SummaryTable`] of statistic/threshold/pass rows. Replicate streams are
//! derived from `(seed, replicate index)`, and aggregation folds over the
//! index order, so tables are bit-identical whatever the thread count or
//! completion order. `HEAVYTAIL_THREADS` caps the worker pool.
//!
//! [`run_criterion`] packages the ten numbered checks of the acceptance
//! suite — exact identities, closed-form oracles, and Monte Carlo bounds at
//! desk scale — and [`acceptance_suite`] runs them all. Thresholds live in
//! [`thresholds`] with their justifications.

use std::sync::Arc;

use rayon::prelude::*;
use rustfft::{num_complex::Complex, Fft, FftPlanner};
use serde::{Deserialize, Serialize};

use crate::dist::{
    centering_integral, karamata_asymptote, truncated_moments, truncation_window,
    TailBalancedLaw, TruncationWindow,
};
use crate::error::{Error, Result};
use crate::gfp::{
    binomial_coeffs, expansion_residual, farima_coeffs, gamma_ratio_check, partial_sums,
    FarimaSpec,
};
use crate::kernels::{coeff_step_kernel, LimitKernel, StepKernel};
use crate::numerics::{gamma_fn, normal_cdf, CompensatedSum};
use crate::pointproc::{count_rectangle, extreme_cdf, sample_limit_pattern};
use crate::rng::{derive_seed, stream_from_seed};
use crate::simulate::{
    decompose, fractional_levy, lepage_levy, middle_part_endpoint, path_endpoint_rescaled,
    scaling_check, simulate_path, DEFAULT_DEPTH,
};

/// Tolerances and test levels used by the experiments and the acceptance
/// suite, each with the reasoning that fixed its value.
pub mod thresholds {
    /// Kolmogorov–Smirnov acceptance levels inflate the asymptotic 95%
    /// quantile (`1.36/√m` one-sample, `1.36·√((m+n)/mn)` two-sample) by
    /// this factor: the sampled laws differ from their limits by a finite-n
    /// bias of the invariance principle itself, which the asymptotic
    /// quantile does not budget for.
    pub const KS_INFLATION: f64 = 1.6;

    /// One-sample KS threshold at `reps` replicates.
    pub fn ks_one_sample(reps: usize) -> f64 {
        KS_INFLATION * 1.36 / (reps as f64).sqrt()
    }

    /// Two-sample KS threshold for sample sizes `m` and `n`.
    pub fn ks_two_sample(m: usize, n: usize) -> f64 {
        KS_INFLATION * 1.36 * ((m + n) as f64 / (m as f64 * n as f64)).sqrt()
    }

    /// Decomposition identity: the three parts are assembled from terms
    /// bit-aligned with the full path and folded with compensated
    /// summation, so the residual sits at the rounding floor of the part
    /// magnitudes — orders below this ceiling. Relative to `1 + |target|`.
    pub const IDENTITY_TOL: f64 = 1e-9;

    /// Expansion residual halving: `e_1(2n)/e_1(n) → 1/2` as the next
    /// expansion order kicks in; 0.75 leaves slack for the `O(1/n)` term.
    pub const EXPANSION_RATIO: f64 = 0.75;

    /// Karamata coefficient/partial-sum asymptotics: the relative error is
    /// `O(1/k)` with a small constant, far below 2% on the tested grids.
    pub const KARAMATA_TOL: f64 = 0.02;

    /// Middle-part normality at 2000 replicates (criterion wording); equals
    /// `ks_one_sample(2000)` rounded up at the second decimal.
    pub const GAUSS_KS: f64 = 0.05;

    /// Endpoint law vs LePage limit, two-sample at 2000 + 2000.
    pub const STABLE_KS: f64 = 0.06;

    /// Self-similarity two-sample check at 2000 + 2000.
    pub const SCALING_KS: f64 = 0.06;

    /// Max-functional CDF gap: binomial standard error at 1000 replicates
    /// is ≈ 0.016; 0.05 budgets three of those plus finite-n drift.
    pub const EXTREME_TOL: f64 = 0.05;

    /// Monte Carlo mean agreement, in units of the sample standard error.
    pub const COUNT_SIGMA: f64 = 3.0;

    /// Extracted-pattern mean counts vs the limit mean measure: finite-n
    /// patterns carry edge and discretization bias of a few percent, so the
    /// band is relative and wide.
    pub const EXTRACTED_TOL: f64 = 0.15;

    /// Truncated-variance ratio vs its closed form: both sides are exact
    /// expressions, agreement is pure floating point.
    pub const MOMENT_TOL: f64 = 1e-6;

    /// `|μ_n|/σ_n` under a symmetric law: the two half-line primitives
    /// cancel algebraically, leaving at most rounding.
    pub const SYMMETRY_TOL: f64 = 1e-12;

    /// Spread bound max/min for the constant in `|Γ(k+d)/Γ(k+1) − h_1(k)|
    /// ≤ C·k^{d-3}`: the normalized error converges to `|Q_2|` with an
    /// `O(1/k)` correction, a few percent at k = 100.
    pub const C_STABILITY: f64 = 1.05;

    /// Truncation-window exponent used by the gaussianity experiment.
    pub const MIDDLE_THETA: f64 = 0.3;

    /// Magnitude floor for point patterns.
    pub const PATTERN_FLOOR: f64 = 0.05;

    /// Rectangle levels for point-count experiments.
    pub const COUNT_LEVELS: [f64; 3] = [0.2, 0.5, 1.0];

    /// Evaluation points for the extreme-value CDF comparison.
    pub const EXTREME_LEVELS: [f64; 3] = [0.5, 1.0, 2.0];
}

// ---------------------------------------------------------------------------
// Empirical distribution statistics
// ---------------------------------------------------------------------------

/// Fraction of samples `≤ x`.
pub fn empirical_cdf(samples: &[f64], x: f64) -> Result<f64> {
    if samples.is_empty() {
        return Err(Error::Domain("empirical cdf of an empty sample".into()));
    }
    let count = samples.iter().filter(|v| **v <= x).count();
    Ok(count as f64 / samples.len() as f64)
}

/// Two-sample Kolmogorov–Smirnov statistic: the sup-distance between the
/// empirical CDFs, computed by a merge scan over both sorted samples.
pub fn ks_two_sample(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::Domain(
            "two-sample KS needs both samples nonempty".into(),
        ));
    }
    let mut sa = a.to_vec();
    let mut sb = b.to_vec();
    sa.sort_by(f64::total_cmp);
    sb.sort_by(f64::total_cmp);
    let (m, n) = (sa.len() as f64, sb.len() as f64);
    let (mut i, mut j) = (0usize, 0usize);
    let mut sup: f64 = 0.0;
    while i < sa.len() || j < sb.len() {
        let v = match (sa.get(i), sb.get(j)) {
            (Some(&x), Some(&y)) => x.min(y),
            (Some(&x), None) => x,
            (None, Some(&y)) => y,
            (None, None) => unreachable!(),
        };
        while i < sa.len() && sa[i] == v {
            i += 1;
        }
        while j < sb.len() && sb[j] == v {
            j += 1;
        }
        sup = sup.max((i as f64 / m - j as f64 / n).abs());
    }
    Ok(sup)
}

/// One-sample Kolmogorov–Smirnov statistic against `N(0, σ²)`:
/// `sup_x |F̂(x) − Φ(x/σ)|`, with the normal CDF evaluated through a
/// rational erf approximation accurate to about 1e-7.
pub fn ks_vs_normal(samples: &[f64], sigma: f64) -> Result<f64> {
    if samples.is_empty() {
        return Err(Error::Domain("KS statistic of an empty sample".into()));
    }
    if !(sigma > 0.0) || !sigma.is_finite() {
        return Err(Error::Domain(format!(
            "normal scale must be positive, got {sigma}"
        )));
    }
    let mut sorted = samples.to_vec();
    sorted.sort_by(f64::total_cmp);
    let m = sorted.len() as f64;
    let mut sup: f64 = 0.0;
    for (i, &x) in sorted.iter().enumerate() {
        let f = normal_cdf(x / sigma);
        sup = sup.max(f - i as f64 / m).max((i + 1) as f64 / m - f);
    }
    Ok(sup)
}

// ---------------------------------------------------------------------------
// Experiment plumbing
// ---------------------------------------------------------------------------

/// The process model an experiment simulates: a limit-kernel shape sampled
/// on the grid, or a FARIMA coefficient sequence used raw.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum ModelSpec {
    /// Discretize this kernel as `k̄_n(i/n) = k(i/n)`.
    Kernel(LimitKernel),
    /// Use the FARIMA coefficients `g_0..g_n` as the step kernel — the
    /// scaling under which extreme-value and point-process limits hold.
    Farima(FarimaSpec),
}

/// Output format flags for report emission.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct OutputFlags {
    /// Emit the CSV report.
    pub csv: bool,
    /// Emit the JSON report.
    pub json: bool,
}

impl Default for OutputFlags {
    fn default() -> Self {
        Self {
            csv: true,
            json: false,
        }
    }
}

/// A replicable Monte Carlo experiment: what to simulate, at which sizes,
/// how many replicates, and under which root seed.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentSpec {
    /// Experiment kind: one of `gaussianity`, `stable-limit`, `extremes`,
    /// `point-counts`, `expansion`.
    pub name: String,
    /// Innovation law.
    pub law: TailBalancedLaw,
    /// Process model.
    pub model: ModelSpec,
    /// Grid sizes, strictly ascending.
    pub n_values: Vec<usize>,
    /// Replicates per grid size.
    pub reps: usize,
    /// Root seed; replicate `r` uses the stream derived from `(seed, r)`.
    pub seed: u64,
    /// Report format flags.
    pub outputs: OutputFlags,
}

impl ExperimentSpec {
    /// Check the structural invariants: `reps ≥ 1`, `n_values` nonempty and
    /// strictly ascending.
    pub fn validate(&self) -> Result<()> {
        if self.reps == 0 {
            return Err(Error::Validation(
                "an experiment needs at least one replicate".into(),
            ));
        }
        if self.n_values.is_empty() {
            return Err(Error::Validation(
                "an experiment needs at least one grid size".into(),
            ));
        }
        if self.n_values.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Validation(format!(
                "grid sizes must be strictly ascending, got {:?}",
                self.n_values
            )));
        }
        Ok(())
    }
}

/// One statistic of a summary table.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SummaryRow {
    /// Experiment or criterion name.
    pub name: String,
    /// Grid size the statistic was computed at (0 when not applicable).
    pub n: usize,
    /// Replicates behind the statistic (1 for deterministic checks).
    pub reps: usize,
    /// Statistic label.
    pub statistic: String,
    /// Observed value.
    pub value: f64,
    /// Acceptance threshold: the row passes when `value <= threshold`.
    pub threshold: f64,
    /// Whether the row passed.
    pub pass: bool,
}

impl SummaryRow {
    fn new(
        name: &str,
        n: usize,
        reps: usize,
        statistic: String,
        value: f64,
        threshold: f64,
    ) -> Self {
        Self {
            name: name.to_string(),
            n,
            reps,
            statistic,
            value,
            threshold,
            pass: value <= threshold,
        }
    }
}

/// Deterministic result table of an experiment or of the acceptance suite.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct SummaryTable {
    /// Statistic rows in evaluation order.
    pub rows: Vec<SummaryRow>,
}

impl SummaryTable {
    /// True when every row passed.
    pub fn all_pass(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }

    /// Append all rows of another table.
    pub fn extend(&mut self, other: SummaryTable) {
        self.rows.extend(other.rows);
    }

    /// CSV report: `name,n,reps,statistic,value,threshold,pass`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("name,n,reps,statistic,value,threshold,pass\n");
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{},{},{}\n",
                r.name, r.n, r.reps, r.statistic, r.value, r.threshold, r.pass
            ));
        }
        out
    }

    /// JSON report mirroring the CSV columns.
    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(&self.rows)
            .map_err(|e| Error::Validation(format!("report serialization failed: {e}")))
    }
}

/// Worker pool honoring the `HEAVYTAIL_THREADS` cap (unset or unparsable
/// means the rayon default).
fn worker_pool() -> Result<rayon::ThreadPool> {
    let threads = std::env::var("HEAVYTAIL_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|&t| t >= 1)
        .unwrap_or(0);
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::Validation(format!("worker pool construction failed: {e}")))
}

/// Map replicate indices `0..reps` to values in parallel, deterministically:
/// replicate `r` uses `derive_seed(seed, offset + r)` and results are
/// collected in index order, so the output is independent of scheduling.
fn par_replicates<F>(
    pool: &rayon::ThreadPool,
    reps: usize,
    seed: u64,
    offset: u64,
    f: F,
) -> Result<Vec<f64>>
where
    F: Fn(u64) -> Result<f64> + Sync,
{
    pool.install(|| {
        (0..reps)
            .into_par_iter()
            .map(|r| f(derive_seed(seed, offset + r as u64)))
            .collect()
    })
}

/// Compensated sample mean and (Bessel-corrected) standard deviation;
/// the deviation is 0 for fewer than two samples.
pub fn mean_and_sd(samples: &[f64]) -> (f64, f64) {
    let n = samples.len() as f64;
    let mut acc = CompensatedSum::new();
    for &v in samples {
        acc.add(v);
    }
    let mean = acc.value() / n;
    if samples.len() < 2 {
        return (mean, 0.0);
    }
    let mut sq = CompensatedSum::new();
    for &v in samples {
        sq.add((v - mean) * (v - mean));
    }
    (mean, (sq.value() / (n - 1.0)).sqrt())
}

/// Deviation of a Monte Carlo mean from its target in units of the sample
/// standard error; infinite when the spread is zero but the mean is off.
fn stderr_deviation(samples: &[f64], target: f64) -> f64 {
    let (mean, sd) = mean_and_sd(samples);
    let stderr = sd / (samples.len() as f64).sqrt();
    if stderr == 0.0 {
        if mean == target {
            0.0
        } else {
            f64::INFINITY
        }
    } else {
        (mean - target).abs() / stderr
    }
}

fn step_kernel_for(model: &ModelSpec, n: usize) -> Result<StepKernel> {
    match model {
        ModelSpec::Kernel(k) => StepKernel::from_fn(|t| k.eval(t), n),
        ModelSpec::Farima(spec) => {
            let coeffs = farima_coeffs(spec, n)?;
            coeff_step_kernel(&coeffs.g, n)
        }
    }
}

fn farima_of(model: &ModelSpec, kind: &str) -> Result<FarimaSpec> {
    match model {
        ModelSpec::Farima(spec) => Ok(spec.clone()),
        ModelSpec::Kernel(_) => Err(Error::Unsupported(format!(
            "the {kind} experiment needs a FARIMA coefficient model; \
             a bare kernel has no coefficient sequence"
        ))),
    }
}

// ---------------------------------------------------------------------------
// FFT path engine
// ---------------------------------------------------------------------------

/// Repeated-path engine: rescaled paths `r_i = (S̄_n − s̄_n)(i/n)/F_*^{-1}`
/// for many seeds at one fixed `(law, g, n)`, convolving by FFT in
/// `O(n log n)` per path instead of the exact `O(n²)` loop.
///
/// The innovation stream matches [`simulate_path`] for the same seed; the
/// only difference from [`crate::simulate::rescaled_process`] is FFT
/// rounding, around 1e-12 of the path scale — far below every Monte Carlo
/// tolerance it feeds (the exact-identity criterion does not use this
/// engine).
struct FftPaths {
    law: TailBalancedLaw,
    n: usize,
    size: usize,
    fwd: Arc<dyn Fft<f64>>,
    inv: Arc<dyn Fft<f64>>,
    g_hat: Vec<Complex<f64>>,
    center: Vec<f64>,
    star: f64,
}

impl FftPaths {
    fn new(law: &TailBalancedLaw, g: &[f64], n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::Validation(
                "the FFT path engine needs a grid of at least 2 steps".into(),
            ));
        }
        if g.len() <= n {
            return Err(Error::Range(format!(
                "coefficient horizon {} too short for grid size {n}",
                g.len()
            )));
        }
        let size = (2 * n).next_power_of_two();
        let mut planner = FftPlanner::new();
        let fwd = planner.plan_fft_forward(size);
        let inv = planner.plan_fft_inverse(size);
        let mut g_hat = vec![Complex::default(); size];
        for (slot, &gv) in g_hat.iter_mut().zip(&g[..n]) {
            slot.re = gv;
        }
        let mut scratch = vec![Complex::default(); fwd.get_inplace_scratch_len()];
        fwd.process_with_scratch(&mut g_hat, &mut scratch);

        let integral = centering_integral(law, n)?;
        let mut center = Vec::with_capacity(n + 1);
        center.push(0.0);
        let mut prefix = CompensatedSum::new();
        for &gv in &g[..n] {
            prefix.add(gv);
            center.push(prefix.value() * integral);
        }
        let star = law.star_quantile(1.0 - 1.0 / n as f64)?;
        Ok(Self {
            law: law.clone(),
            n,
            size,
            fwd,
            inv,
            g_hat,
            center,
            star,
        })
    }

    /// Rescaled path `r_0..r_n` for this seed.
    fn rescaled(&self, seed: u64) -> Vec<f64> {
        let mut stream = stream_from_seed(seed);
        let mut buf = vec![Complex::default(); self.size];
        for slot in buf.iter_mut().take(self.n) {
            slot.re = self.law.sample_one(&mut stream);
        }
        let scratch_len = self
            .fwd
            .get_inplace_scratch_len()
            .max(self.inv.get_inplace_scratch_len());
        let mut scratch = vec![Complex::default(); scratch_len];
        self.fwd.process_with_scratch(&mut buf, &mut scratch);
        let scale = 1.0 / self.size as f64;
        for (slot, &gh) in buf.iter_mut().zip(&self.g_hat) {
            *slot *= gh * scale;
        }
        self.inv.process_with_scratch(&mut buf, &mut scratch);
        let mut out = Vec::with_capacity(self.n + 1);
        out.push(0.0);
        for i in 1..=self.n {
            out.push((buf[i - 1].re - self.center[i]) / self.star);
        }
        out
    }

    /// Path maximum `max_{0<=i<=n} r_i` (at least 0: the grid includes
    /// `r_0 = 0`).
    fn max_rescaled(&self, seed: u64) -> f64 {
        self.rescaled(seed).into_iter().fold(0.0, f64::max)
    }

    /// Exceedance counts `#{i: r_i > x}` per level. Counting the rescaled
    /// grid directly is the same number `count_rectangle` reports on the
    /// extracted pattern over the full window, for any level above the
    /// extraction floor.
    fn counts_above(&self, seed: u64, levels: &[f64]) -> Vec<f64> {
        let r = self.rescaled(seed);
        levels
            .iter()
            .map(|&x| r.iter().filter(|v| **v > x).count() as f64)
            .collect()
    }
}

// ---------------------------------------------------------------------------
// Experiment kinds
// ---------------------------------------------------------------------------

/// Execute an experiment and aggregate its summary table.
///
/// Kinds:
/// * `gaussianity` — KS of standardized middle-part endpoints against the
///   analytic normal law `N(0, n^{-1}Σk̄_n²)`.
/// * `stable-limit` — two-sample KS between rescaled path endpoints and
///   LePage fractional-Lévy endpoints with the same kernel.
/// * `extremes` — max-functional CDF against the closed-form limit.
/// * `point-counts` — mean rectangle counts of sampled limit patterns (in
///   standard-error units) and of extracted path patterns (relative).
/// * `expansion` — the deterministic residual-halving diagnostic.
pub fn run_experiment(spec: &ExperimentSpec) -> Result<SummaryTable> {
    spec.validate()?;
    let pool = worker_pool()?;
    match spec.name.as_str() {
        "gaussianity" => run_gaussianity(spec, &pool),
        "stable-limit" => run_stable_limit(spec, &pool),
        "extremes" => run_extremes(spec, &pool),
        "point-counts" => run_point_counts(spec, &pool),
        "expansion" => run_expansion(spec),
        other => Err(Error::Validation(format!(
            "unknown experiment kind {other:?}; expected one of gaussianity, \
             stable-limit, extremes, point-counts, expansion"
        ))),
    }
}

fn run_gaussianity(spec: &ExperimentSpec, pool: &rayon::ThreadPool) -> Result<SummaryTable> {
    let mut table = SummaryTable::default();
    for (ni, &n) in spec.n_values.iter().enumerate() {
        let kernel = step_kernel_for(&spec.model, n)?;
        let window = truncation_window(&spec.law, n, thresholds::MIDDLE_THETA)?;
        let offset = (ni * spec.reps) as u64;
        let samples = par_replicates(pool, spec.reps, spec.seed, offset, |s| {
            middle_part_endpoint(&spec.law, &kernel, &window, n, s)
        })?;
        let sigma2: f64 = kernel.values[..n].iter().map(|v| v * v).sum::<f64>() / n as f64;
        let ks = ks_vs_normal(&samples, sigma2.sqrt())?;
        table.rows.push(SummaryRow::new(
            &spec.name,
            n,
            spec.reps,
            "ks-vs-normal".into(),
            ks,
            thresholds::ks_one_sample(spec.reps),
        ));
    }
    Ok(table)
}

fn run_stable_limit(spec: &ExperimentSpec, pool: &rayon::ThreadPool) -> Result<SummaryTable> {
    let limit = match &spec.model {
        ModelSpec::Kernel(k) => k.clone(),
        ModelSpec::Farima(_) => {
            return Err(Error::Unsupported(
                "the stable-limit experiment compares a kernel model against its \
                 fractional Lévy limit; FARIMA coefficient models are not wired here"
                    .into(),
            ))
        }
    };
    let (alpha, p) = (spec.law.alpha, spec.law.p);
    let q = 1.0 - p;
    let mut table = SummaryTable::default();
    for (ni, &n) in spec.n_values.iter().enumerate() {
        let kernel = step_kernel_for(&spec.model, n)?;
        let offset = (2 * ni * spec.reps) as u64;
        let endpoints = par_replicates(pool, spec.reps, spec.seed, offset, |s| {
            path_endpoint_rescaled(&spec.law, &kernel, n, s)
        })?;
        let limits = par_replicates(pool, spec.reps, spec.seed, offset + spec.reps as u64, |s| {
            Ok(fractional_levy(&limit, alpha, p, q, DEFAULT_DEPTH, &[1.0], s)?[0])
        })?;
        let ks = ks_two_sample(&endpoints, &limits)?;
        table.rows.push(SummaryRow::new(
            &spec.name,
            n,
            spec.reps,
            "ks-endpoint-vs-limit".into(),
            ks,
            thresholds::ks_two_sample(spec.reps, spec.reps),
        ));
    }
    Ok(table)
}

fn run_extremes(spec: &ExperimentSpec, pool: &rayon::ThreadPool) -> Result<SummaryTable> {
    let farima = farima_of(&spec.model, "extremes")?;
    let mut table = SummaryTable::default();
    for (ni, &n) in spec.n_values.iter().enumerate() {
        let coeffs = farima_coeffs(&farima, n)?;
        let g_max = coeffs.g.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let engine = FftPaths::new(&spec.law, &coeffs.g, n)?;
        let offset = (ni * spec.reps) as u64;
        let maxima = par_replicates(pool, spec.reps, spec.seed, offset, |s| {
            Ok(engine.max_rescaled(s))
        })?;
        for &x in &thresholds::EXTREME_LEVELS {
            let observed = empirical_cdf(&maxima, x)?;
            let limit = extreme_cdf(spec.law.alpha, spec.law.p, g_max, x)?;
            table.rows.push(SummaryRow::new(
                &spec.name,
                n,
                spec.reps,
                format!("extreme-cdf-gap@x={x}"),
                (observed - limit).abs(),
                thresholds::EXTREME_TOL,
            ));
        }
    }
    Ok(table)
}

fn run_point_counts(spec: &ExperimentSpec, pool: &rayon::ThreadPool) -> Result<SummaryTable> {
    let farima = farima_of(&spec.model, "point-counts")?;
    let (alpha, p) = (spec.law.alpha, spec.law.p);
    let q = 1.0 - p;
    let levels = thresholds::COUNT_LEVELS;
    let mut table = SummaryTable::default();
    for (ni, &n) in spec.n_values.iter().enumerate() {
        let kappa = farima_coeffs(&farima, n)?;
        let kappa_alpha: f64 = kappa
            .g
            .iter()
            .filter(|k| **k > 0.0)
            .map(|k| k.powf(alpha))
            .sum();
        let offset = (2 * ni * spec.reps) as u64;

        // Mean counts of the sampled limit pattern, one rectangle per level.
        let mut sampled: Vec<Vec<f64>> = vec![Vec::with_capacity(spec.reps); levels.len()];
        let rows: Vec<Vec<f64>> = pool.install(|| {
            (0..spec.reps)
                .into_par_iter()
                .map(|r| {
                    let s = derive_seed(spec.seed, offset + r as u64);
                    let pattern = sample_limit_pattern(
                        &kappa,
                        alpha,
                        p,
                        q,
                        DEFAULT_DEPTH,
                        thresholds::PATTERN_FLOOR,
                        s,
                    )?;
                    levels
                        .iter()
                        .map(|&x| Ok(count_rectangle(&pattern, 0.0, 1.0, x)?.0 as f64))
                        .collect::<Result<Vec<f64>>>()
                })
                .collect::<Result<Vec<Vec<f64>>>>()
        })?;
        for counts in &rows {
            for (slot, &c) in sampled.iter_mut().zip(counts) {
                slot.push(c);
            }
        }
        for (li, &x) in levels.iter().enumerate() {
            let target = p * x.powf(-alpha) * kappa_alpha;
            table.rows.push(SummaryRow::new(
                &spec.name,
                n,
                spec.reps,
                format!("sampled-count-dev@x={x}"),
                stderr_deviation(&sampled[li], target),
                thresholds::COUNT_SIGMA,
            ));
        }

        // Mean counts of patterns extracted from simulated paths.
        let extract_reps = (spec.reps / 4).max(1);
        let engine = FftPaths::new(&spec.law, &kappa.g, n)?;
        let extracted: Vec<Vec<f64>> = pool.install(|| {
            (0..extract_reps)
                .into_par_iter()
                .map(|r| {
                    let s = derive_seed(spec.seed, offset + (spec.reps + r) as u64);
                    Ok(engine.counts_above(s, &levels))
                })
                .collect::<Result<Vec<Vec<f64>>>>()
        })?;
        for (li, &x) in levels.iter().enumerate() {
            let target = p * x.powf(-alpha) * kappa_alpha;
            let per_level: Vec<f64> = extracted.iter().map(|c| c[li]).collect();
            let (mean, _) = mean_and_sd(&per_level);
            table.rows.push(SummaryRow::new(
                &spec.name,
                n,
                extract_reps,
                format!("extracted-count-rel@x={x}"),
                (mean / target - 1.0).abs(),
                thresholds::EXTRACTED_TOL,
            ));
        }
    }
    Ok(table)
}

fn run_expansion(spec: &ExperimentSpec) -> Result<SummaryTable> {
    let farima = farima_of(&spec.model, "expansion")?;
    let mut table = SummaryTable::default();
    for &n in &spec.n_values {
        let e_n = expansion_residual(&farima, 1, n)?;
        let e_2n = expansion_residual(&farima, 1, 2 * n)?;
        // When the residual is identically zero (integer orders), the row
        // checks that it stays zero after doubling.
        let value = if e_n == 0.0 {
            e_2n.abs()
        } else {
            e_2n.abs() / e_n.abs()
        };
        table.rows.push(SummaryRow::new(
            &spec.name,
            n,
            1,
            format!("e1-halving@n={n}"),
            value,
            thresholds::EXPANSION_RATIO,
        ));
    }
    Ok(table)
}

// ---------------------------------------------------------------------------
// Acceptance suite
// ---------------------------------------------------------------------------

/// Stamp criterion rows with their criterion name (the experiment's `name`
/// field is its kind and drives dispatch, so the relabeling happens after).
fn relabel(mut table: SummaryTable, name: &str) -> SummaryTable {
    for row in &mut table.rows {
        row.name = name.to_string();
    }
    table
}

/// Relabel and replace thresholds by the criterion-stated constant.
fn retarget(mut table: SummaryTable, name: &str, threshold: f64) -> SummaryTable {
    table = relabel(table, name);
    for row in &mut table.rows {
        row.threshold = threshold;
        row.pass = row.value <= threshold;
    }
    table
}

/// Run one numbered acceptance criterion (1–10) under the given root seed.
///
/// Each criterion returns its rows with the thresholds it is stated with;
/// [`acceptance_suite`] concatenates all ten. The checks are sized to keep
/// the whole suite within minutes on commodity hardware while leaving real
/// statistical margins.
pub fn run_criterion(index: usize, seed: u64) -> Result<SummaryTable> {
    match index {
        1 => criterion_identity(seed),
        2 => criterion_expansion(seed),
        3 => criterion_karamata(seed),
        4 => criterion_gaussianity(seed),
        5 => criterion_stable_limit(seed),
        6 => criterion_scaling(seed),
        7 => criterion_extremes(seed),
        8 => criterion_point_counts(seed),
        9 => criterion_moments(seed),
        10 => criterion_gamma_ratio(seed),
        other => Err(Error::Range(format!(
            "acceptance criterion index must lie in 1..=10, got {other}"
        ))),
    }
}

/// Criterion 1: the exact decomposition identity on 100 seeded paths at
/// n = 10⁴ across α ∈ {0.8, 1, 1.5} and FARIMA γ ∈ {0.5, 1.5}.
fn criterion_identity(seed: u64) -> Result<SummaryTable> {
    const N: usize = 10_000;
    const PATHS: usize = 100;
    let alphas = [0.8, 1.0, 1.5];
    let gammas = [0.5, 1.5];
    let mut combos = Vec::new();
    for &alpha in &alphas {
        for &gamma in &gammas {
            let law = TailBalancedLaw::new(alpha, 0.7)?;
            let spec = FarimaSpec::new(gamma, vec![1.0], vec![1.0])?;
            let coeffs = farima_coeffs(&spec, N)?;
            let kernel = coeff_step_kernel(&coeffs.g, N)?;
            let window = truncation_window(&law, N, 0.5)?;
            combos.push((law, kernel, window));
        }
    }
    let pool = worker_pool()?;
    let residuals: Vec<f64> = pool.install(|| {
        (0..PATHS)
            .into_par_iter()
            .map(|path| {
                let (law, kernel, window) = &combos[path % combos.len()];
                let bundle = simulate_path(law, kernel, N, derive_seed(seed, path as u64))?;
                let parts = decompose(&bundle, window)?;
                let mut worst: f64 = 0.0;
                for i in 0..=N {
                    let target = bundle.s_bar[i] - bundle.center[i];
                    let sum = parts.middle[i] + parts.upper[i] + parts.lower[i];
                    worst = worst.max((sum - target).abs() / (1.0 + target.abs()));
                }
                Ok(worst)
            })
            .collect::<Result<Vec<f64>>>()
    })?;
    let worst = residuals.into_iter().fold(0.0, f64::max);
    let mut table = SummaryTable::default();
    table.rows.push(SummaryRow::new(
        "criterion-01",
        N,
        PATHS,
        "identity-max-residual".into(),
        worst,
        thresholds::IDENTITY_TOL,
    ));
    Ok(table)
}

/// Criterion 2: FARIMA expansion residual halving for three specifications
/// plus the exactly-zero integer case d = 2.
fn criterion_expansion(seed: u64) -> Result<SummaryTable> {
    let cases = [
        (1.3, vec![1.0], vec![1.0]),
        (1.7, vec![1.0, 0.5], vec![1.0, -0.2]),
        (2.5, vec![1.0], vec![1.0]),
    ];
    let mut table = SummaryTable::default();
    for (gamma, theta, phi) in cases {
        let spec = ExperimentSpec {
            name: "expansion".into(),
            law: TailBalancedLaw::symmetric(1.5)?,
            model: ModelSpec::Farima(FarimaSpec::new(gamma, theta, phi)?),
            n_values: vec![512, 1024, 2048],
            reps: 1,
            seed,
            outputs: OutputFlags::default(),
        };
        table.extend(relabel(
            run_experiment(&spec)?,
            &format!("criterion-02[d={gamma}]"),
        ));
    }
    let two = FarimaSpec::new(2.0, vec![1.0], vec![1.0])?;
    for n in [512usize, 1024, 2048] {
        let residual = expansion_residual(&two, 1, n)?.abs();
        table.rows.push(SummaryRow::new(
            "criterion-02[d=2]",
            n,
            1,
            format!("e1-exact@n={n}"),
            residual,
            0.0,
        ));
    }
    Ok(table)
}

/// Criterion 3: Karamata asymptotics of binomial coefficients and their
/// partial sums, uniformly over x ∈ [0.1, 2].
fn criterion_karamata(_seed: u64) -> Result<SummaryTable> {
    const N: usize = 10_000;
    let mut table = SummaryTable::default();
    for gamma in [1.3f64, 1.7] {
        let series = binomial_coeffs(gamma, 2 * N)?;
        let transfer = FarimaSpec::new(gamma, vec![1.0], vec![1.0])?;
        let norm = transfer.value_at(1.0 - 1.0 / N as f64)?;
        let (gamma_g, gamma_sum) = (gamma_fn(gamma), gamma_fn(1.0 + gamma));
        let mut worst_coeff: f64 = 0.0;
        let mut worst_sum: f64 = 0.0;
        for i in 1..=20 {
            let x = i as f64 * 0.1;
            let k = (N as f64 * x).floor() as usize;
            let coeff_stat = series.g[k] * gamma_g * N as f64 / (x.powf(gamma - 1.0) * norm);
            worst_coeff = worst_coeff.max((coeff_stat - 1.0).abs());
            let sum_stat =
                partial_sums(&series, N as f64 * x)? * gamma_sum / (x.powf(gamma) * norm);
            worst_sum = worst_sum.max((sum_stat - 1.0).abs());
        }
        table.rows.push(SummaryRow::new(
            "criterion-03",
            N,
            1,
            format!("karamata-coeff@gamma={gamma}"),
            worst_coeff,
            thresholds::KARAMATA_TOL,
        ));
        table.rows.push(SummaryRow::new(
            "criterion-03",
            N,
            1,
            format!("karamata-sum@gamma={gamma}"),
            worst_sum,
            thresholds::KARAMATA_TOL,
        ));
    }
    Ok(table)
}

/// Criterion 4: normality of the standardized middle part at n = 2·10⁴
/// under the fractional kernel γ = 1.5.
fn criterion_gaussianity(seed: u64) -> Result<SummaryTable> {
    let spec = ExperimentSpec {
        name: "gaussianity".into(),
        law: TailBalancedLaw::symmetric(1.5)?,
        model: ModelSpec::Kernel(LimitKernel::fractional(1.5)?),
        n_values: vec![20_000],
        reps: 2000,
        seed,
        outputs: OutputFlags::default(),
    };
    Ok(retarget(
        run_experiment(&spec)?,
        "criterion-04",
        thresholds::GAUSS_KS,
    ))
}

/// Criterion 5: rescaled random-walk endpoints against the LePage stable
/// limit, two-sample KS at 2000 + 2000.
fn criterion_stable_limit(seed: u64) -> Result<SummaryTable> {
    let spec = ExperimentSpec {
        name: "stable-limit".into(),
        law: TailBalancedLaw::symmetric(1.5)?,
        model: ModelSpec::Kernel(LimitKernel::constant(1.0)?),
        n_values: vec![20_000],
        reps: 2000,
        seed,
        outputs: OutputFlags::default(),
    };
    Ok(retarget(
        run_experiment(&spec)?,
        "criterion-05",
        thresholds::STABLE_KS,
    ))
}

/// Criterion 6: the scaling property L(t) ≐ t^{1/α}L(1) by two-sample KS,
/// and the closed-form mean α/(α-1) of the positive LePage branch.
fn criterion_scaling(seed: u64) -> Result<SummaryTable> {
    const REPS: usize = 2000;
    let mut table = SummaryTable::default();
    let (at_half, scaled) = scaling_check(1.5, 0.5, 0.5, 0.5, REPS, derive_seed(seed, 0))?;
    table.rows.push(SummaryRow::new(
        "criterion-06",
        0,
        REPS,
        "scaling-ks@t=0.5".into(),
        ks_two_sample(&at_half, &scaled)?,
        thresholds::SCALING_KS,
    ));
    let pool = worker_pool()?;
    for (ai, alpha) in [1.25f64, 1.5, 1.8].into_iter().enumerate() {
        let offset = ((ai + 1) * REPS) as u64;
        let samples = par_replicates(&pool, REPS, seed, offset, |s| {
            Ok(lepage_levy(alpha, 1.0, 0.0, DEFAULT_DEPTH, &[1.0], s)?.values[0])
        })?;
        table.rows.push(SummaryRow::new(
            "criterion-06",
            0,
            REPS,
            format!("lepage-mean-dev@alpha={alpha}"),
            stderr_deviation(&samples, alpha / (alpha - 1.0)),
            thresholds::COUNT_SIGMA,
        ));
    }
    Ok(table)
}

/// Criterion 7: the max-functional distribution of a FARIMA d = 0.5 path
/// at n = 5·10⁴ against the closed-form extreme-value CDF.
fn criterion_extremes(seed: u64) -> Result<SummaryTable> {
    let spec = ExperimentSpec {
        name: "extremes".into(),
        law: TailBalancedLaw::symmetric(1.5)?,
        model: ModelSpec::Farima(FarimaSpec::new(0.5, vec![1.0], vec![1.0])?),
        n_values: vec![50_000],
        reps: 1000,
        seed,
        outputs: OutputFlags::default(),
    };
    Ok(retarget(
        run_experiment(&spec)?,
        "criterion-07",
        thresholds::EXTREME_TOL,
    ))
}

/// Criterion 8: mean rectangle counts of the sampled limit pattern (3
/// standard errors) and of extracted empirical patterns (15%), FARIMA
/// d = 0.05, α = 1.5, p = 0.7.
///
/// The memory parameter is kept small on purpose.  Counts above a level are
/// dominated by rare large jumps that contribute `u^{1/(1-d)}` points at
/// once, so the Monte Carlo mean of the count converges at rate
/// `reps^{-(1-1/(α(1-d)))}` — for d near `1 - 1/α` the 500-replicate mean
/// sits far below its expectation with high probability even though the
/// estimator is unbiased.  d = 0.05 keeps that exponent near 1/3 and the
/// typical deviation a few percent, well inside the 15% band.
fn criterion_point_counts(seed: u64) -> Result<SummaryTable> {
    let spec = ExperimentSpec {
        name: "point-counts".into(),
        law: TailBalancedLaw::new(1.5, 0.7)?,
        model: ModelSpec::Farima(FarimaSpec::new(0.05, vec![1.0], vec![1.0])?),
        n_values: vec![50_000],
        reps: 2000,
        seed,
        outputs: OutputFlags::default(),
    };
    Ok(relabel(run_experiment(&spec)?, "criterion-08"))
}

/// Criterion 9: truncated-moment asymptotics of the pure symmetric Pareto
/// law — the exact variance ratio and the vanishing mean.
fn criterion_moments(_seed: u64) -> Result<SummaryTable> {
    let law = TailBalancedLaw::symmetric(1.5)?;
    let mut table = SummaryTable::default();
    for b in [1e2f64, 1e3, 1e4] {
        let window = TruncationWindow::new(-b, b, 1.0, 2)?;
        let moments = truncated_moments(&law, &window)?;
        let asymptote = karamata_asymptote(&law, -b, b)?;
        let target = 1.0 - b.powf(law.alpha - 2.0);
        table.rows.push(SummaryRow::new(
            "criterion-09",
            0,
            1,
            format!("variance-ratio-gap@b={b}"),
            (moments.sigma2 / asymptote - target).abs(),
            thresholds::MOMENT_TOL,
        ));
        table.rows.push(SummaryRow::new(
            "criterion-09",
            0,
            1,
            format!("mean-over-sd@b={b}"),
            moments.mu.abs() / moments.sigma2.sqrt(),
            thresholds::SYMMETRY_TOL,
        ));
    }
    Ok(table)
}

/// Criterion 10: stability of the constant in the gamma-ratio expansion
/// error bound `|Γ(k+d)/Γ(k+1) − h_1(k)| ≤ C·k^{d-3}`, plus the exact
/// integer case d = 2 where `h_1(k) = k + 1`.
fn criterion_gamma_ratio(_seed: u64) -> Result<SummaryTable> {
    let ks = [1e2f64, 1e3, 1e4];
    let mut table = SummaryTable::default();
    for d in [1.3f64, 1.5, 1.7] {
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for &k in &ks {
            let (ratio, h) = gamma_ratio_check(d, 1, k)?;
            let c = (ratio - h).abs() * k.powf(3.0 - d);
            lo = lo.min(c);
            hi = hi.max(c);
        }
        table.rows.push(SummaryRow::new(
            "criterion-10",
            0,
            1,
            format!("cfit-spread@d={d}"),
            hi / lo,
            thresholds::C_STABILITY,
        ));
    }
    let mut worst: f64 = 0.0;
    for &k in &ks {
        let (_, h) = gamma_ratio_check(2.0, 1, k)?;
        worst = worst.max((h - (k + 1.0)).abs());
    }
    table.rows.push(SummaryRow::new(
        "criterion-10",
        0,
        1,
        "ratio-exact@d=2".into(),
        worst,
        0.0,
    ));
    Ok(table)
}

/// Run all ten acceptance criteria and concatenate their tables.
pub fn acceptance_suite(seed: u64) -> Result<SummaryTable> {
    let mut table = SummaryTable::default();
    for index in 1..=10 {
        table.extend(run_criterion(index, seed)?);
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::open01;
    use crate::simulate::rescaled_process;

    #[test]
    fn empirical_cdf_matches_hand_values() {
        let s = [1.0, 2.0, 3.0];
        assert_eq!(empirical_cdf(&s, 0.5).unwrap(), 0.0);
        assert_eq!(empirical_cdf(&s, 2.0).unwrap(), 2.0 / 3.0);
        assert_eq!(empirical_cdf(&s, 3.0).unwrap(), 1.0);
        assert_eq!(empirical_cdf(&s, 9.0).unwrap(), 1.0);
        assert!(empirical_cdf(&[], 0.0).is_err());
    }

    #[test]
    fn ks_two_sample_hand_values_and_symmetry() {
        assert_eq!(ks_two_sample(&[0.0], &[1.0]).unwrap(), 1.0);
        let a = [1.0, 3.0];
        let b = [2.0, 4.0];
        assert_eq!(ks_two_sample(&a, &b).unwrap(), 0.5);
        assert_eq!(
            ks_two_sample(&a, &b).unwrap(),
            ks_two_sample(&b, &a).unwrap()
        );
        let same = [0.3, -1.0, 2.5, 0.3];
        assert_eq!(ks_two_sample(&same, &same).unwrap(), 0.0);
        assert!(ks_two_sample(&[], &[1.0]).is_err());
    }

    #[test]
    fn ks_vs_normal_calibrates() {
        // A single sample at the median has distance exactly 1/2.
        assert_eq!(ks_vs_normal(&[0.0], 1.0).unwrap(), 0.5);
        // Box–Muller normals at matched scale stay below the 95% band;
        // a scale mismatch by 2 is detected loudly.
        let mut stream = stream_from_seed(11);
        let normals: Vec<f64> = (0..2000)
            .map(|_| {
                let (u, v) = (open01(&mut stream), open01(&mut stream));
                (-2.0 * u.ln()).sqrt() * (std::f64::consts::TAU * v).cos()
            })
            .collect();
        assert!(ks_vs_normal(&normals, 1.0).unwrap() < 1.36 / (2000f64).sqrt());
        assert!(ks_vs_normal(&normals, 2.0).unwrap() > 0.15);
        assert!(ks_vs_normal(&normals, 0.0).is_err());
    }

    #[test]
    fn spec_validation_rejects_malformed_experiments() {
        let mut spec = ExperimentSpec {
            name: "gaussianity".into(),
            law: TailBalancedLaw::symmetric(1.5).unwrap(),
            model: ModelSpec::Kernel(LimitKernel::constant(1.0).unwrap()),
            n_values: vec![100, 200],
            reps: 4,
            seed: 1,
            outputs: OutputFlags::default(),
        };
        assert!(spec.validate().is_ok());
        spec.reps = 0;
        assert!(spec.validate().is_err());
        spec.reps = 4;
        spec.n_values = vec![];
        assert!(spec.validate().is_err());
        spec.n_values = vec![200, 100];
        assert!(spec.validate().is_err());
        spec.n_values = vec![100, 100];
        assert!(spec.validate().is_err());
    }

    #[test]
    fn unknown_experiment_kind_is_rejected() {
        let spec = ExperimentSpec {
            name: "bootstrap".into(),
            law: TailBalancedLaw::symmetric(1.5).unwrap(),
            model: ModelSpec::Kernel(LimitKernel::constant(1.0).unwrap()),
            n_values: vec![100],
            reps: 1,
            seed: 1,
            outputs: OutputFlags::default(),
        };
        assert!(matches!(
            run_experiment(&spec),
            Err(Error::Validation(msg)) if msg.contains("unknown experiment kind")
        ));
    }

    #[test]
    fn smoke_runs_emit_one_row_per_statistic_and_are_deterministic() {
        let spec = ExperimentSpec {
            name: "gaussianity".into(),
            law: TailBalancedLaw::symmetric(1.5).unwrap(),
            model: ModelSpec::Kernel(LimitKernel::fractional(1.5).unwrap()),
            n_values: vec![300, 400],
            reps: 25,
            seed: 7,
            outputs: OutputFlags::default(),
        };
        let first = run_experiment(&spec).unwrap();
        assert_eq!(first.rows.len(), 2);
        assert_eq!(first.rows[0].statistic, "ks-vs-normal");
        let second = run_experiment(&spec).unwrap();
        assert_eq!(first, second);
    }

    #[test]
    fn summary_table_reports_round_trip() {
        let mut table = SummaryTable::default();
        table.rows.push(SummaryRow::new(
            "demo",
            100,
            4,
            "stat".into(),
            0.25,
            0.5,
        ));
        table
            .rows
            .push(SummaryRow::new("demo", 200, 4, "stat".into(), 0.75, 0.5));
        assert!(!table.all_pass());
        let csv = table.to_csv();
        assert!(csv.starts_with("name,n,reps,statistic,value,threshold,pass\n"));
        assert!(csv.contains("demo,100,4,stat,0.25,0.5,true"));
        assert!(csv.contains("demo,200,4,stat,0.75,0.5,false"));
        let rows: Vec<SummaryRow> = serde_json::from_str(&table.to_json().unwrap()).unwrap();
        assert_eq!(rows, table.rows);
    }

    #[test]
    fn fft_paths_match_the_exact_convolution() {
        let n = 1500;
        let law = TailBalancedLaw::new(1.5, 0.7).unwrap();
        let coeffs = binomial_coeffs(0.3, n).unwrap();
        let engine = FftPaths::new(&law, &coeffs.g, n).unwrap();
        let fast = engine.rescaled(99);
        let kernel = coeff_step_kernel(&coeffs.g, n).unwrap();
        let bundle = simulate_path(&law, &kernel, n, 99).unwrap();
        let exact = rescaled_process(&bundle).unwrap();
        assert_eq!(fast.len(), exact.len());
        let scale = exact.iter().fold(1.0f64, |m, v| m.max(v.abs()));
        for (f, e) in fast.iter().zip(&exact) {
            assert!((f - e).abs() <= 1e-9 * scale, "{f} vs {e}");
        }
        // Counting levels through the engine agrees with rectangle counts
        // on the extracted pattern.
        let counts = engine.counts_above(99, &[0.5, 1.0]);
        let pattern = crate::pointproc::extract_pattern(&bundle, 0.05).unwrap();
        for (c, x) in counts.iter().zip([0.5, 1.0]) {
            let (above, _) = count_rectangle(&pattern, 0.0, 1.0, x).unwrap();
            assert_eq!(*c as usize, above);
        }
        // The path maximum agrees too (both include the zero at t = 0).
        let max_exact = exact.iter().fold(0.0f64, |m, v| m.max(*v));
        assert!((engine.max_rescaled(99) - max_exact).abs() <= 1e-9 * scale.max(1.0));
    }

    #[test]
    fn stable_limit_requires_a_kernel_model() {
        let spec = ExperimentSpec {
            name: "stable-limit".into(),
            law: TailBalancedLaw::symmetric(1.5).unwrap(),
            model: ModelSpec::Farima(FarimaSpec::new(1.5, vec![1.0], vec![1.0]).unwrap()),
            n_values: vec![100],
            reps: 2,
            seed: 1,
            outputs: OutputFlags::default(),
        };
        assert!(matches!(
            run_experiment(&spec),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn expansion_experiment_reproduces_halving() {
        let spec = ExperimentSpec {
            name: "expansion".into(),
            law: TailBalancedLaw::symmetric(1.5).unwrap(),
            model: ModelSpec::Farima(FarimaSpec::new(1.3, vec![1.0], vec![1.0]).unwrap()),
            n_values: vec![256, 512],
            reps: 1,
            seed: 0,
            outputs: OutputFlags::default(),
        };
        let table = run_experiment(&spec).unwrap();
        assert_eq!(table.rows.len(), 2);
        for row in &table.rows {
            assert!(row.pass, "{row:?}");
            assert!(row.value > 0.25 && row.value < 0.75);
        }
    }

    #[test]
    fn criterion_index_bounds() {
        assert!(run_criterion(0, 1).is_err());
        assert!(run_criterion(11, 1).is_err());
    }

    #[test]
    fn deterministic_criteria_pass_quickly() {
        // The four deterministic criteria (3, 9, 10 and the d = 2 arm of 2)
        // are cheap; run them outright as unit checks.
        for index in [3usize, 9, 10] {
            let table = run_criterion(index, 42).unwrap();
            assert!(table.all_pass(), "criterion {index}: {:#?}", table.rows);
        }
    }

    #[test]
    fn mean_and_sd_agree_with_closed_forms() {
        let (m, s) = mean_and_sd(&[1.0, 2.0, 3.0, 4.0]);
        assert!((m - 2.5).abs() < 1e-15);
        assert!((s - (5.0f64 / 3.0).sqrt()).abs() < 1e-15);
        let dev = stderr_deviation(&[2.0, 2.0], 2.0);
        assert_eq!(dev, 0.0);
        assert!(stderr_deviation(&[2.0, 2.0], 3.0).is_infinite());
    }
}
