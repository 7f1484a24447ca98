// SPDX-License-Identifier: MIT

//! Point patterns of rescaled paths and their limit law.
//!
//! A rescaled path induces the pattern of points `(i/n, r_i)` with
//! `r_i = (S̄_n − s̄_n)(i/n) / F_*^{-1}(1-1/n)`; its distributional limit is a
//! pattern built from a stable atom stream smeared across a coefficient
//! sequence `κ`. Patterns are compared only above a magnitude floor —
//! rectangle counts over sets bounded away from zero — which is the
//! finite-sample face of vague convergence on `[0,1]×(ℝ∖{0})`. The module
//! also evaluates the limit law of the path maximum.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gfp::CoeffSeries;
use crate::rng::{open01, replicate_stream};
use crate::simulate::{rescaled_process, PathBundle};

/// A finite point pattern on `[0,1] × (ℝ∖{0})`, carrying the magnitude floor
/// it was truncated at.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PointPattern {
    /// Points `(t, y)` with `t` in `[0,1]` and `|y|` above the floor.
    pub points: Vec<(f64, f64)>,
    /// Magnitude floor: points with `|y| <= floor` are excluded.
    pub floor: f64,
}

impl PointPattern {
    /// Largest point magnitude in the positive direction, and 0 for a
    /// pattern with no positive points — matching the path maximum, whose
    /// grid includes the zero value at `t = 0`.
    pub fn max_y(&self) -> f64 {
        self.points.iter().map(|&(_, y)| y).fold(0.0, f64::max)
    }
}

fn check_floor(floor: f64) -> Result<()> {
    if !(floor > 0.0) || !floor.is_finite() {
        return Err(Error::Domain(format!(
            "magnitude floor must be positive, got {floor}"
        )));
    }
    Ok(())
}

/// Pattern of the rescaled path: points `(i/n, r_i)` with `|r_i| > floor`.
pub fn extract_pattern(bundle: &PathBundle, floor: f64) -> Result<PointPattern> {
    check_floor(floor)?;
    let r = rescaled_process(bundle)?;
    let n = bundle.n as f64;
    let points = r
        .iter()
        .enumerate()
        .filter(|(_, y)| y.abs() > floor)
        .map(|(i, &y)| (i as f64 / n, y))
        .collect();
    Ok(PointPattern { points, floor })
}

/// Sample the limit pattern: atoms `(V_j, W_j)` of a unit-rate stream give
/// points `(V_j, p^{1/α}·κ_i·W_j^{-1/α})` over every coefficient index `i`,
/// plus a mirrored independent stream with weight `−q^{1/α}`.
///
/// A stream stops at `W_j > depth` or as soon as its largest possible
/// magnitude `weight·max|κ|·W_j^{-1/α}` falls to the floor — past that point
/// no atom can contribute, so the truncation is exact relative to the floor.
/// Points are emitted in decreasing `|κ|` order per atom and cut at the
/// floor, so the cost is proportional to the points actually reported.
pub fn sample_limit_pattern(
    kappa: &CoeffSeries,
    alpha: f64,
    p: f64,
    q: f64,
    depth: f64,
    floor: f64,
    seed: u64,
) -> Result<PointPattern> {
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
    check_floor(floor)?;
    if kappa.g.is_empty() || kappa.g.iter().any(|v| !v.is_finite()) {
        return Err(Error::Validation(
            "coefficient sequence must be nonempty and finite".into(),
        ));
    }

    // Coefficients sorted by decreasing magnitude: per atom we walk this
    // list until the product drops to the floor.
    let mut by_mag: Vec<f64> = kappa.g.iter().copied().filter(|v| *v != 0.0).collect();
    by_mag.sort_by(|a, b| b.abs().total_cmp(&a.abs()));
    let kappa_sup = by_mag.first().map_or(0.0, |v| v.abs());
    let inv_alpha = 1.0 / alpha;

    let mut points = Vec::new();
    for (branch, weight) in [(0u64, p.powf(inv_alpha)), (1, -(q.powf(inv_alpha)))] {
        let mut stream = replicate_stream(seed, branch);
        let scale = weight.abs() * kappa_sup;
        let mut w = 0.0f64;
        loop {
            w += -open01(&mut stream).ln();
            let mag = w.powf(-inv_alpha);
            if w > depth || scale * mag <= floor {
                break;
            }
            let v = open01(&mut stream);
            for &k in &by_mag {
                let y = weight * k * mag;
                if y.abs() <= floor {
                    break;
                }
                points.push((v, y));
            }
        }
    }
    Ok(PointPattern { points, floor })
}

/// Count points in `[t0, t1]` beyond level `x`: the pair
/// `(#{y > x}, #{y < -x})`. The level must not sit below the pattern's
/// floor — only there is the pattern complete.
pub fn count_rectangle(
    pattern: &PointPattern,
    t0: f64,
    t1: f64,
    x: f64,
) -> Result<(usize, usize)> {
    if !(t0 <= t1) {
        return Err(Error::Domain(format!(
            "time window is empty: t0 = {t0}, t1 = {t1}"
        )));
    }
    if !(x >= pattern.floor) {
        return Err(Error::Domain(format!(
            "count level {x} lies below the pattern floor {}; below it the \
             pattern is truncated",
            pattern.floor
        )));
    }
    let mut above = 0usize;
    let mut below = 0usize;
    for &(t, y) in &pattern.points {
        if (t0..=t1).contains(&t) {
            if y > x {
                above += 1;
            } else if y < -x {
                below += 1;
            }
        }
    }
    Ok((above, below))
}

/// Path maximum under the extreme-value normalization:
/// `max_{0<=i<=n} (S_n(i/n) − c_{n,i}) / F_*^{-1}(1-1/n)`. The grid includes
/// `i = 0`, so the value is at least 0.
pub fn max_functional(bundle: &PathBundle) -> Result<f64> {
    let r = rescaled_process(bundle)?;
    Ok(r.into_iter().fold(0.0, f64::max))
}

/// Limit CDF of the path maximum: `exp(−p·g_max^α·x^{-α})` for `x > 0` —
/// the law of `p^{1/α}·g_max·W_1^{-1/α}` with `W_1` standard exponential.
pub fn extreme_cdf(alpha: f64, p: f64, g_max: f64, x: f64) -> Result<f64> {
    if !(alpha > 0.0 && alpha < 2.0) {
        return Err(Error::Domain(format!(
            "stability index must lie in (0,2), got {alpha}"
        )));
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Domain(format!(
            "upper tail weight must lie in [0,1], got {p}"
        )));
    }
    if !(g_max > 0.0) || !g_max.is_finite() {
        return Err(Error::Domain(format!(
            "coefficient maximum must be positive, got {g_max}"
        )));
    }
    if !(x > 0.0) {
        return Err(Error::Domain(format!(
            "evaluation point must be positive, got {x}"
        )));
    }
    Ok((-p * g_max.powf(alpha) * x.powf(-alpha)).exp())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dist::TailBalancedLaw;
    use crate::gfp::binomial_coeffs;
    use crate::kernels::{coeff_step_kernel, StepKernel};
    use crate::simulate::simulate_path;

    fn walk_bundle(n: usize, seed: u64) -> PathBundle {
        let law = TailBalancedLaw::new(1.5, 0.7).unwrap();
        let g = binomial_coeffs(0.5, n).unwrap();
        let kernel = coeff_step_kernel(&g.g, n).unwrap();
        simulate_path(&law, &kernel, n, seed).unwrap()
    }

    #[test]
    fn zero_path_gives_empty_pattern() {
        let law = TailBalancedLaw::symmetric(1.5).unwrap();
        let kernel = StepKernel::from_fn(|_| 0.0, 20).unwrap();
        let bundle = simulate_path(&law, &kernel, 20, 1).unwrap();
        let pattern = extract_pattern(&bundle, 0.05).unwrap();
        assert!(pattern.points.is_empty());
        assert_eq!(pattern.max_y(), 0.0);
    }

    #[test]
    fn floor_above_path_sup_gives_empty_pattern() {
        let bundle = walk_bundle(100, 3);
        let sup = rescaled_process(&bundle)
            .unwrap()
            .iter()
            .fold(0.0f64, |m, v| m.max(v.abs()));
        let pattern = extract_pattern(&bundle, 2.0 * sup).unwrap();
        assert!(pattern.points.is_empty());
    }

    #[test]
    fn extraction_is_reproducible_and_floor_monotone() {
        let a = extract_pattern(&walk_bundle(200, 9), 0.05).unwrap();
        let b = extract_pattern(&walk_bundle(200, 9), 0.05).unwrap();
        assert_eq!(a, b);
        let tight = extract_pattern(&walk_bundle(200, 9), 0.2).unwrap();
        assert!(tight.points.len() <= a.points.len());
        for &(t, y) in &a.points {
            assert!((0.0..=1.0).contains(&t));
            assert!(y.abs() > 0.05);
        }
    }

    #[test]
    fn single_coefficient_reduces_to_stable_stream() {
        // κ = (1): points are exactly (V_j, p^{1/α}W_j^{-1/α}) down to the
        // floor, all positive when q = 0.
        let kappa = CoeffSeries {
            g: vec![1.0],
            gamma_hint: None,
        };
        let (alpha, p, floor) = (1.5, 1.0, 0.05);
        let pattern = sample_limit_pattern(&kappa, alpha, p, 0.0, 1e6, floor, 77).unwrap();
        assert!(!pattern.points.is_empty());
        assert!(pattern.points.iter().all(|&(_, y)| y > floor));
        // Magnitudes must decrease along the stream (W increases).
        for pair in pattern.points.windows(2) {
            assert!(pair[1].1 < pair[0].1);
        }
        // The stop rule is exact: the smallest kept magnitude is above the
        // floor, and the count matches W_j <= floor^{-α} atoms on average.
        let count = pattern.points.len() as f64;
        let expected = floor.powf(-alpha); // E#{j: W_j <= p·floor^{-α}}, p = 1
        assert!((count - expected).abs() < 4.0 * expected.sqrt(), "{count}");
    }

    #[test]
    fn rectangle_counts_match_mean_measure() {
        // E N([0,t]×(x,∞)) = t·p·x^{-α}·Σ_{κ_i>0} κ_i^α.
        let kappa = CoeffSeries {
            g: vec![1.0, 0.6, 0.3],
            gamma_hint: None,
        };
        let (alpha, p, q, floor) = (1.5f64, 0.7, 0.3, 0.02);
        let (t, x) = (0.8, 0.6);
        let reps = 600;
        let mut total = 0usize;
        for r in 0..reps {
            let pattern =
                sample_limit_pattern(&kappa, alpha, p, q, 1e7, floor, 1000 + r as u64).unwrap();
            total += count_rectangle(&pattern, 0.0, t, x).unwrap().0;
        }
        let mean = total as f64 / reps as f64;
        let pos_sum: f64 = kappa
            .g
            .iter()
            .filter(|k| **k > 0.0)
            .map(|k| k.powf(alpha))
            .sum();
        let want = t * p * x.powf(-alpha) * pos_sum;
        // One atom can clear the level through several coefficients at once,
        // so the count is an over-dispersed marked Poisson; its variance is
        // at most (number of coefficients)·mean.
        let stderr = (kappa.g.len() as f64 * want / reps as f64).sqrt();
        assert!(
            (mean - want).abs() < 4.0 * stderr,
            "mean {mean} vs {want} (stderr {stderr})"
        );
    }

    #[test]
    fn rectangle_counts_are_monotone_and_additive() {
        let kappa = CoeffSeries {
            g: vec![1.0, -0.5],
            gamma_hint: None,
        };
        let pattern = sample_limit_pattern(&kappa, 1.2, 0.6, 0.4, 1e6, 0.04, 5).unwrap();
        let (a1, b1) = count_rectangle(&pattern, 0.0, 1.0, 0.05).unwrap();
        let (a2, b2) = count_rectangle(&pattern, 0.2, 0.8, 0.05).unwrap();
        let (a3, b3) = count_rectangle(&pattern, 0.2, 0.8, 0.5).unwrap();
        assert!(a2 <= a1 && b2 <= b1);
        assert!(a3 <= a2 && b3 <= b2);
        // Additivity across a time split (no atom sits exactly at 1/2).
        let (left, _) = count_rectangle(&pattern, 0.0, 0.5, 0.05).unwrap();
        let (right, _) = count_rectangle(&pattern, 0.5, 1.0, 0.05).unwrap();
        assert!(pattern.points.iter().all(|&(t, _)| t != 0.5));
        assert_eq!(left + right, a1);
        // Full window at the floor itself recovers every point.
        let (all_pos, all_neg) = count_rectangle(&pattern, 0.0, 1.0, 0.04).unwrap();
        let pos = pattern.points.iter().filter(|p| p.1 > 0.0).count();
        assert_eq!((all_pos, all_neg), (pos, pattern.points.len() - pos));
        // Below the floor the count is refused, as is an empty window.
        assert!(count_rectangle(&pattern, 0.0, 1.0, 0.03).is_err());
        assert!(count_rectangle(&pattern, 0.7, 0.2, 0.05).is_err());
    }

    #[test]
    fn empty_pattern_counts_zero() {
        let pattern = PointPattern {
            points: Vec::new(),
            floor: 0.05,
        };
        assert_eq!(count_rectangle(&pattern, 0.0, 1.0, 0.1).unwrap(), (0, 0));
        assert_eq!(pattern.max_y(), 0.0);
    }

    #[test]
    fn max_functional_matches_rescaled_sup() {
        let bundle = walk_bundle(150, 21);
        let r = rescaled_process(&bundle).unwrap();
        let manual = r.iter().copied().fold(0.0f64, f64::max);
        assert_eq!(max_functional(&bundle).unwrap(), manual);
        // n = 1: the single rescaled value (or 0 if it is negative).
        let law = TailBalancedLaw::new(1.5, 1.0).unwrap();
        let kernel = StepKernel::new(vec![1.0, 0.0]).unwrap();
        let single = simulate_path(&law, &kernel, 1, 2).unwrap();
        let m = max_functional(&single).unwrap();
        assert_eq!(m, rescaled_process(&single).unwrap()[1].max(0.0));
    }

    #[test]
    fn extreme_cdf_frozen_values() {
        // α = 3/2, p·g_max^α = 1/2: exp(−x^{-3/2}/2) at x = 1/2, 1, 2.
        let want = [
            (0.5, 0.243_116_734_434_214_21),
            (1.0, 0.606_530_659_712_633_42),
            (2.0, 0.837_966_885_578_755_79),
        ];
        for &(x, w) in &want {
            let got = extreme_cdf(1.5, 0.5, 1.0, x).unwrap();
            assert!((got - w).abs() < 1e-15, "x={x}: {got} vs {w}");
        }
    }

    #[test]
    fn extreme_cdf_shape_and_domain() {
        let mut last = 0.0;
        for i in 1..200 {
            let x = i as f64 * 0.1;
            let v = extreme_cdf(1.2, 0.7, 1.3, x).unwrap();
            assert!((0.0..=1.0).contains(&v) && v >= last);
            last = v;
        }
        assert!(extreme_cdf(1.2, 0.7, 1.3, 1e12).unwrap() > 0.999_999);
        assert!(extreme_cdf(1.2, 0.7, 1.3, 1e-9).unwrap() < 1e-6);
        assert!(extreme_cdf(1.2, 0.7, 0.0, 1.0).is_err());
        assert!(extreme_cdf(1.2, 0.7, -1.0, 1.0).is_err());
        assert!(extreme_cdf(1.2, 0.7, 1.0, 0.0).is_err());
        assert!(extreme_cdf(2.5, 0.7, 1.0, 1.0).is_err());
        assert!(extreme_cdf(1.2, 1.7, 1.0, 1.0).is_err());
    }

    #[test]
    fn limit_pattern_rejects_bad_arguments() {
        let kappa = CoeffSeries {
            g: vec![1.0],
            gamma_hint: None,
        };
        assert!(sample_limit_pattern(&kappa, 2.0, 0.5, 0.5, 100.0, 0.05, 0).is_err());
        assert!(sample_limit_pattern(&kappa, 1.5, 0.6, 0.6, 100.0, 0.05, 0).is_err());
        assert!(sample_limit_pattern(&kappa, 1.5, 0.5, 0.5, 0.2, 0.05, 0).is_err());
        assert!(sample_limit_pattern(&kappa, 1.5, 0.5, 0.5, 100.0, 0.0, 0).is_err());
        let empty = CoeffSeries {
            g: vec![],
            gamma_hint: None,
        };
        assert!(sample_limit_pattern(&empty, 1.5, 0.5, 0.5, 100.0, 0.05, 0).is_err());
    }
}
