// SPDX-License-Identifier: MIT

//! Command-line front end.
//!
//! One thin binary exposes the library: coefficient dumps, expansion
//! checks, path simulation, the exact truncation decomposition, truncated
//! LePage series paths, point-pattern extraction, extreme-value tables, and
//! the full verification suite. Every subcommand is deterministic given its
//! flags: the same seed produces byte-identical output, replicated
//! experiments fold over replicate index order, and `HEAVYTAIL_THREADS`
//! caps the worker pool without changing any number.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or domain error,
//! 3 I/O failure. Output goes to `--out` when given (written once, after
//! the computation has finished, so a rejected invocation never leaves a
//! partial file) and to standard output otherwise.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::dist::{truncation_window, TailBalancedLaw};
use crate::error::{Error, Result};
use crate::gfp::{expansion_oracle, farima_coeffs, FarimaSpec};
use crate::harness::{
    acceptance_suite, run_experiment, ExperimentSpec, ModelSpec, OutputFlags, SummaryTable,
};
use crate::kernels::{coeff_step_kernel, LimitKernel};
use crate::pointproc::extract_pattern;
use crate::simulate::{decompose, fractional_levy, rescaled_process, simulate_path};

/// Truncation exponent θ for the `simulate` and `decompose` splits: the
/// window keeps the central `n − 2⌊n^θ⌋`-quantile range. Fixed rather than
/// flagged so the two subcommands stay reproducible from the seed alone.
const SPLIT_THETA: f64 = 0.5;

/// Magnitude floor for `pp` pattern extraction; exceedances of the rescaled
/// path below this are discarded as grid dust.
const PATTERN_FLOOR: f64 = 0.05;

// ---------------------------------------------------------------------------
// Flags and configuration
// ---------------------------------------------------------------------------

/// Report format for tabular output.
#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    /// Comma-separated values with a header line.
    Csv,
    /// JSON mirroring the CSV columns.
    Json,
}

/// Top-level argument grammar: one subcommand plus the shared flags.
#[derive(Debug, Parser)]
#[command(
    name = "heavytail",
    version,
    about = "Simulate and verify heavy-tailed linear processes",
    disable_help_subcommand = true
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    options: Options,
}

/// Shared flags. Every field is optional at parse time; [`Resolved`]
/// applies `--config` values and the documented defaults afterwards, so a
/// flag given on the command line always wins over the config file.
#[derive(Debug, Default, Args)]
struct Options {
    /// Stability index of the innovation law, in (0,2) [default: 1.5]
    #[arg(long, global = true)]
    alpha: Option<f64>,
    /// Right-tail weight p of the innovation law, in [0,1] [default: 0.5]
    #[arg(long, global = true)]
    p: Option<f64>,
    /// Memory parameter: FARIMA order d, or the limit-kernel exponent for
    /// flp [default: 1.5]
    #[arg(long, global = true)]
    gamma: Option<f64>,
    /// Moving-average polynomial Θ as comma-separated coefficients,
    /// constant first [default: 1]
    #[arg(long, global = true)]
    theta: Option<String>,
    /// Autoregressive polynomial Φ as comma-separated coefficients,
    /// constant first [default: 1]
    #[arg(long, global = true)]
    phi: Option<String>,
    /// Grid size / coefficient count, at least 1 [default: 1000]
    #[arg(long, global = true)]
    n: Option<usize>,
    /// Monte Carlo replicates [default: 1000]
    #[arg(long, global = true)]
    reps: Option<usize>,
    /// Root seed; replicate streams are derived from it [default: 42]
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Series truncation depth for L: the expected number of kept jumps
    /// [default: 10000]
    #[arg(long, global = true)]
    depth: Option<f64>,
    /// Output file; standard output when absent
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Output format [default: csv]
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// JSON file with the same keys as the flags; flags win on conflict
    #[arg(long, global = true)]
    config: Option<PathBuf>,
}

/// The eight subcommands.
#[derive(Debug, Subcommand)]
enum Command {
    /// Dump FARIMA(Φ, d, Θ) series coefficients g_0..g_{n-1}
    Coeffs,
    /// Compare coefficients against the first-order expansion (requires
    /// gamma > 1)
    ExpansionCheck,
    /// Simulate one path and emit the full decomposition columns
    Simulate,
    /// Emit the middle/upper/lower split with the identity residual
    Decompose,
    /// Sample a truncated-series fractional Lévy path on the grid
    Flp,
    /// Extract the exceedance point pattern of one simulated path
    Pp,
    /// Tabulate path maxima against the extreme-value limit
    Extremes,
    /// Run the acceptance suite; exit 1 if any criterion fails
    Verify,
}

/// `--config` file contents: the flag set, minus `config` itself. Unknown
/// keys are rejected for the same reason unknown flags are.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    alpha: Option<f64>,
    p: Option<f64>,
    gamma: Option<f64>,
    theta: Option<Vec<f64>>,
    phi: Option<Vec<f64>>,
    n: Option<usize>,
    reps: Option<usize>,
    seed: Option<u64>,
    depth: Option<f64>,
    out: Option<PathBuf>,
    format: Option<Format>,
}

/// Fully resolved parameter set: flags over config over defaults.
#[derive(Debug, Clone, PartialEq)]
struct Resolved {
    alpha: f64,
    p: f64,
    gamma: f64,
    theta: Vec<f64>,
    phi: Vec<f64>,
    n: usize,
    reps: usize,
    seed: u64,
    depth: f64,
    out: Option<PathBuf>,
    format: Format,
}

/// Parse a comma-separated coefficient list, e.g. `1,0.5,-0.2`.
fn parse_poly(flag: &str, text: &str) -> Result<Vec<f64>> {
    text.split(',')
        .map(|piece| {
            piece.trim().parse::<f64>().map_err(|_| {
                Error::Usage(format!(
                    "--{flag} expects comma-separated numbers, got {piece:?}"
                ))
            })
        })
        .collect()
}

/// Load the `--config` JSON. A missing or unreadable file is an I/O
/// failure; malformed JSON or unknown keys are usage errors.
fn load_config(path: Option<&Path>) -> Result<ConfigFile> {
    let Some(path) = path else {
        return Ok(ConfigFile::default());
    };
    let text = fs::read_to_string(path)?;
    serde_json::from_str(&text)
        .map_err(|e| Error::Usage(format!("config {}: {e}", path.display())))
}

impl Resolved {
    fn new(options: &Options, config: ConfigFile) -> Result<Self> {
        let theta = match &options.theta {
            Some(text) => parse_poly("theta", text)?,
            None => config.theta.unwrap_or_else(|| vec![1.0]),
        };
        let phi = match &options.phi {
            Some(text) => parse_poly("phi", text)?,
            None => config.phi.unwrap_or_else(|| vec![1.0]),
        };
        let resolved = Self {
            alpha: options.alpha.or(config.alpha).unwrap_or(1.5),
            p: options.p.or(config.p).unwrap_or(0.5),
            gamma: options.gamma.or(config.gamma).unwrap_or(1.5),
            theta,
            phi,
            n: options.n.or(config.n).unwrap_or(1000),
            reps: options.reps.or(config.reps).unwrap_or(1000),
            seed: options.seed.or(config.seed).unwrap_or(42),
            depth: options.depth.or(config.depth).unwrap_or(10_000.0),
            out: options.out.clone().or(config.out),
            format: options.format.or(config.format).unwrap_or(Format::Csv),
        };
        if resolved.n == 0 {
            return Err(Error::Usage("--n must be at least 1".into()));
        }
        Ok(resolved)
    }

    fn farima(&self) -> Result<FarimaSpec> {
        FarimaSpec::new(self.gamma, self.theta.clone(), self.phi.clone())
    }

    fn law(&self) -> Result<TailBalancedLaw> {
        TailBalancedLaw::new(self.alpha, self.p)
    }
}

// ---------------------------------------------------------------------------
// Entry points
// ---------------------------------------------------------------------------

/// Parse `std::env::args` and run; returns the process exit code.
pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version land on stdout with code 0; anything else is
            // a usage error.
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("heavytail: {e}");
            e.exit_code()
        }
    }
}

/// Resolve flags and execute the subcommand. `Ok` carries the exit code so
/// `verify` can report failed criteria without treating them as errors.
fn dispatch(cli: &Cli) -> Result<i32> {
    let config = load_config(cli.options.config.as_deref())?;
    let resolved = Resolved::new(&cli.options, config)?;
    let (text, code) = match cli.command {
        Command::Coeffs => (render_coeffs(&resolved)?, 0),
        Command::ExpansionCheck => (render_expansion_check(&resolved)?, 0),
        Command::Simulate => (render_simulate(&resolved)?, 0),
        Command::Decompose => (render_decompose(&resolved)?, 0),
        Command::Flp => (render_flp(&resolved)?, 0),
        Command::Pp => (render_pp(&resolved)?, 0),
        Command::Extremes => (render_extremes(&resolved)?, 0),
        Command::Verify => render_verify(&resolved)?,
    };
    emit(&resolved, &text)?;
    Ok(code)
}

/// Write the finished report: one `fs::write` to `--out`, or stdout.
fn emit(resolved: &Resolved, text: &str) -> Result<()> {
    match &resolved.out {
        Some(path) => fs::write(path, text).map_err(Error::from),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

// ---------------------------------------------------------------------------
// Subcommands
// ---------------------------------------------------------------------------

/// `coeffs`: the first `n` series coefficients of FARIMA(Φ, d, Θ).
fn render_coeffs(r: &Resolved) -> Result<String> {
    let series = farima_coeffs(&r.farima()?, r.n - 1)?;
    match r.format {
        Format::Csv => {
            let mut out = String::from("k,g\n");
            for (k, g) in series.g.iter().enumerate() {
                writeln!(out, "{k},{g}").expect("string write");
            }
            Ok(out)
        }
        Format::Json => to_json_line(&series.g),
    }
}

/// One `expansion-check` row: coefficient against prediction.
#[derive(Serialize)]
struct ExpansionRow {
    n: usize,
    g: f64,
    p1: f64,
    residual: f64,
}

/// `expansion-check`: coefficients g_k next to the first-order prediction
/// `k^{d-1}·P_1(1/k)` and the scaled residual `(g_k − p1)/k^{d-2}`, for
/// k = 1..=n. The residual column shrinking like 1/k is the numerical
/// content of the expansion.
fn render_expansion_check(r: &Resolved) -> Result<String> {
    let spec = r.farima()?;
    let oracle = expansion_oracle(&spec, 1)?;
    let series = farima_coeffs(&spec, r.n)?;
    let rows: Vec<ExpansionRow> = (1..=r.n)
        .map(|k| {
            let kf = k as f64;
            let g = series.g[k];
            let p1 = kf.powf(r.gamma - 1.0) * oracle.p_eval(1.0 / kf);
            ExpansionRow {
                n: k,
                g,
                p1,
                residual: (g - p1) / kf.powf(r.gamma - 2.0),
            }
        })
        .collect();
    match r.format {
        Format::Csv => {
            let mut out = String::from("n,g,p1,residual\n");
            for row in &rows {
                writeln!(out, "{},{},{},{}", row.n, row.g, row.p1, row.residual)
                    .expect("string write");
            }
            Ok(out)
        }
        Format::Json => to_json_line(&rows),
    }
}

/// Everything `simulate` and `decompose` share: one seeded path with its
/// centering, split at the `n^θ` truncation window.
struct SimulatedSplit {
    bundle: crate::simulate::PathBundle,
    decomp: crate::simulate::Decomposition,
}

fn simulate_split(r: &Resolved) -> Result<SimulatedSplit> {
    let law = r.law()?;
    let series = farima_coeffs(&r.farima()?, r.n)?;
    let kernel = coeff_step_kernel(&series.g, r.n)?;
    let bundle = simulate_path(&law, &kernel, r.n, r.seed)?;
    let window = truncation_window(&law, r.n, SPLIT_THETA)?;
    let decomp = decompose(&bundle, &window)?;
    Ok(SimulatedSplit { bundle, decomp })
}

/// Column-oriented path report shared by `simulate`'s CSV and JSON forms.
#[derive(Serialize)]
struct PathReport {
    t: Vec<f64>,
    s_bar: Vec<f64>,
    center: Vec<f64>,
    middle: Vec<f64>,
    upper: Vec<f64>,
    lower: Vec<f64>,
    rescaled: Vec<f64>,
}

/// `simulate`: the full seven-column path dump on the grid i/n.
fn render_simulate(r: &Resolved) -> Result<String> {
    let split = simulate_split(r)?;
    let rescaled = rescaled_process(&split.bundle)?;
    let n = split.bundle.n;
    let report = PathReport {
        t: (0..=n).map(|i| i as f64 / n as f64).collect(),
        s_bar: split.bundle.s_bar.clone(),
        center: split.bundle.center.clone(),
        middle: split.decomp.middle.clone(),
        upper: split.decomp.upper.clone(),
        lower: split.decomp.lower.clone(),
        rescaled,
    };
    match r.format {
        Format::Csv => {
            let mut out = String::from("t,s_bar,center,middle,upper,lower,rescaled\n");
            for i in 0..=n {
                writeln!(
                    out,
                    "{},{},{},{},{},{},{}",
                    report.t[i],
                    report.s_bar[i],
                    report.center[i],
                    report.middle[i],
                    report.upper[i],
                    report.lower[i],
                    report.rescaled[i]
                )
                .expect("string write");
            }
            Ok(out)
        }
        Format::Json => to_json_line(&report),
    }
}

/// One `decompose` row: the three parts and the identity residual.
#[derive(Serialize)]
struct DecomposeRow {
    t: f64,
    middle: f64,
    upper: f64,
    lower: f64,
    residual: f64,
}

/// `decompose`: middle/upper/lower with the relative identity residual
/// `|middle+upper+lower − (S̄_n − s̄_n)|/(1 + |S̄_n − s̄_n|)` per grid point;
/// the column stays below 10⁻⁹ by construction.
fn render_decompose(r: &Resolved) -> Result<String> {
    let split = simulate_split(r)?;
    let n = split.bundle.n;
    let rows: Vec<DecomposeRow> = (0..=n)
        .map(|i| {
            let target = split.bundle.s_bar[i] - split.bundle.center[i];
            let sum = split.decomp.middle[i] + split.decomp.upper[i] + split.decomp.lower[i];
            DecomposeRow {
                t: i as f64 / n as f64,
                middle: split.decomp.middle[i],
                upper: split.decomp.upper[i],
                lower: split.decomp.lower[i],
                residual: (sum - target).abs() / (1.0 + target.abs()),
            }
        })
        .collect();
    match r.format {
        Format::Csv => {
            let mut out = String::from("t,middle,upper,lower,residual\n");
            for row in &rows {
                writeln!(
                    out,
                    "{},{},{},{},{}",
                    row.t, row.middle, row.upper, row.lower, row.residual
                )
                .expect("string write");
            }
            Ok(out)
        }
        Format::Json => to_json_line(&rows),
    }
}

/// `flp`: a truncated-series fractional Lévy path on the grid i/n, using
/// the fractional limit kernel with exponent `--gamma`.
fn render_flp(r: &Resolved) -> Result<String> {
    let kernel = LimitKernel::fractional(r.gamma)?;
    let grid: Vec<f64> = (0..=r.n).map(|i| i as f64 / r.n as f64).collect();
    let values = fractional_levy(
        &kernel,
        r.alpha,
        r.p,
        1.0 - r.p,
        r.depth,
        &grid,
        r.seed,
    )?;
    match r.format {
        Format::Csv => {
            let mut out = String::from("t,value\n");
            for (t, v) in grid.iter().zip(&values) {
                writeln!(out, "{t},{v}").expect("string write");
            }
            Ok(out)
        }
        Format::Json => {
            #[derive(Serialize)]
            struct FlpReport {
                t: Vec<f64>,
                value: Vec<f64>,
            }
            to_json_line(&FlpReport { t: grid, value: values })
        }
    }
}

/// `pp`: the exceedance pattern of one simulated path — points (i/n, r_i)
/// of the rescaled process with |r_i| above the extraction floor.
fn render_pp(r: &Resolved) -> Result<String> {
    let split = simulate_split(r)?;
    let pattern = extract_pattern(&split.bundle, PATTERN_FLOOR)?;
    match r.format {
        Format::Csv => {
            let mut out = String::from("t,y\n");
            for (t, y) in &pattern.points {
                writeln!(out, "{t},{y}").expect("string write");
            }
            Ok(out)
        }
        Format::Json => to_json_line(&pattern.points),
    }
}

/// `extremes`: the harness extreme-value experiment at the given law,
/// FARIMA model, grid size, and replicate count.
fn render_extremes(r: &Resolved) -> Result<String> {
    let spec = ExperimentSpec {
        name: "extremes".into(),
        law: r.law()?,
        model: ModelSpec::Farima(r.farima()?),
        n_values: vec![r.n],
        reps: r.reps,
        seed: r.seed,
        outputs: output_flags(r.format),
    };
    let table = run_experiment(&spec)?;
    render_table(r, &table)
}

/// `verify`: the full acceptance suite; exit code 1 when any row fails.
fn render_verify(r: &Resolved) -> Result<(String, i32)> {
    let table = acceptance_suite(r.seed)?;
    let code = if table.all_pass() { 0 } else { 1 };
    Ok((render_table(r, &table)?, code))
}

fn output_flags(format: Format) -> OutputFlags {
    OutputFlags {
        csv: format == Format::Csv,
        json: format == Format::Json,
    }
}

fn render_table(r: &Resolved, table: &SummaryTable) -> Result<String> {
    Ok(match r.format {
        Format::Csv => table.to_csv(),
        Format::Json => table.to_json()?,
    })
}

/// Serialize as one JSON document with a trailing newline.
fn to_json_line<T: Serialize>(value: &T) -> Result<String> {
    let mut text = serde_json::to_string(value)
        .map_err(|e| Error::Validation(format!("report serialization failed: {e}")))?;
    text.push('\n');
    Ok(text)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Cli {
        Cli::try_parse_from(args).expect("parse")
    }

    fn resolve(args: &[&str]) -> Resolved {
        let cli = parse(args);
        let config = load_config(cli.options.config.as_deref()).unwrap();
        Resolved::new(&cli.options, config).unwrap()
    }

    #[test]
    fn defaults_fill_unset_flags() {
        let r = resolve(&["heavytail", "coeffs"]);
        assert_eq!(r.alpha, 1.5);
        assert_eq!(r.p, 0.5);
        assert_eq!(r.gamma, 1.5);
        assert_eq!(r.theta, vec![1.0]);
        assert_eq!(r.phi, vec![1.0]);
        assert_eq!(r.n, 1000);
        assert_eq!(r.reps, 1000);
        assert_eq!(r.seed, 42);
        assert_eq!(r.depth, 10_000.0);
        assert_eq!(r.format, Format::Csv);
        assert!(r.out.is_none());
    }

    #[test]
    fn unknown_flags_are_rejected() {
        assert!(Cli::try_parse_from(["heavytail", "coeffs", "--frobnicate", "1"]).is_err());
    }

    #[test]
    fn polynomial_lists_parse_and_reject_garbage() {
        let r = resolve(&["heavytail", "coeffs", "--theta", "1,0.5", "--phi", " 1 , -0.2 "]);
        assert_eq!(r.theta, vec![1.0, 0.5]);
        assert_eq!(r.phi, vec![1.0, -0.2]);
        let cli = parse(&["heavytail", "coeffs", "--theta", "1,x"]);
        let err = Resolved::new(&cli.options, ConfigFile::default()).unwrap_err();
        assert!(matches!(err, Error::Usage(_)), "{err}");
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn flags_beat_config_beats_defaults() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("config.json");
        fs::write(&path, r#"{"alpha": 1.2, "n": 7, "theta": [1.0, 0.3]}"#).unwrap();
        let config_flag = path.to_str().unwrap();
        let r = resolve(&[
            "heavytail", "coeffs", "--config", config_flag, "--alpha", "1.9",
        ]);
        assert_eq!(r.alpha, 1.9, "flag wins");
        assert_eq!(r.n, 7, "config fills the gap");
        assert_eq!(r.theta, vec![1.0, 0.3]);
        assert_eq!(r.p, 0.5, "default fills the rest");
    }

    #[test]
    fn config_rejects_unknown_keys_and_missing_files() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("config.json");
        fs::write(&path, r#"{"alfa": 1.2}"#).unwrap();
        let err = load_config(Some(&path)).unwrap_err();
        assert_eq!(err.exit_code(), 2, "{err}");
        let missing = load_config(Some(Path::new("/nonexistent/config.json"))).unwrap_err();
        assert_eq!(missing.exit_code(), 3, "{missing}");
    }

    #[test]
    fn coeffs_binomial_prefix_matches_recursion() {
        let r = resolve(&["heavytail", "coeffs", "--gamma", "1.5", "--n", "4"]);
        let text = render_coeffs(&r).unwrap();
        assert_eq!(text, "k,g\n0,1\n1,1.5\n2,1.875\n3,2.1875\n");
    }

    #[test]
    fn coeffs_json_is_the_plain_array() {
        let mut r = resolve(&["heavytail", "coeffs", "--gamma", "1.5", "--n", "4"]);
        r.format = Format::Json;
        assert_eq!(render_coeffs(&r).unwrap(), "[1.0,1.5,1.875,2.1875]\n");
    }

    #[test]
    fn zero_n_is_a_usage_error() {
        let cli = parse(&["heavytail", "coeffs", "--n", "0"]);
        let err = Resolved::new(&cli.options, ConfigFile::default()).unwrap_err();
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn out_of_range_alpha_exits_with_usage_code() {
        let r = resolve(&["heavytail", "simulate", "--alpha", "2.5", "--n", "16"]);
        let err = render_simulate(&r).unwrap_err();
        assert_eq!(err.exit_code(), 2);
        assert!(err.to_string().contains("alpha"), "{err}");
    }

    #[test]
    fn decompose_residual_column_is_tiny() {
        let r = resolve(&["heavytail", "decompose", "--n", "64", "--gamma", "0.8"]);
        let text = render_decompose(&r).unwrap();
        for line in text.lines().skip(1) {
            let residual: f64 = line.split(',').nth(4).unwrap().parse().unwrap();
            assert!(residual < 1e-9, "{line}");
        }
    }

    #[test]
    fn simulate_is_byte_deterministic_per_seed() {
        let r = resolve(&["heavytail", "simulate", "--n", "32", "--seed", "7"]);
        let a = render_simulate(&r).unwrap();
        let b = render_simulate(&r).unwrap();
        assert_eq!(a, b);
        let other = resolve(&["heavytail", "simulate", "--n", "32", "--seed", "8"]);
        assert_ne!(a, render_simulate(&other).unwrap());
    }

    #[test]
    fn flp_constant_one_grid_hits_known_depth_mean_shape() {
        let r = resolve(&[
            "heavytail", "flp", "--gamma", "1.5", "--alpha", "1.5", "--n", "8", "--depth",
            "1000",
        ]);
        let text = render_flp(&r).unwrap();
        assert!(text.starts_with("t,value\n"));
        assert_eq!(text.lines().count(), 10, "header plus nine grid points");
    }

    #[test]
    fn pp_points_respect_the_floor() {
        let r = resolve(&["heavytail", "pp", "--n", "256", "--gamma", "0.3", "--alpha", "1.2"]);
        let text = render_pp(&r).unwrap();
        for line in text.lines().skip(1) {
            let y: f64 = line.split(',').nth(1).unwrap().parse().unwrap();
            assert!(y.abs() > PATTERN_FLOOR, "{line}");
        }
    }
}
