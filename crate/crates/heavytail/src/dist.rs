// SPDX-License-Identifier: MIT

//! Two-sided Pareto laws with balanced regularly varying tails, their
//! quantiles, and exact truncated moments.
//!
//! A law with tail index `alpha` and balance `(p, q)`, `p + q = 1`, puts
//! `P{X > x} = p·x^{-alpha}` and `P{X < -x} = q·x^{-alpha}` for `x >= 1` and
//! no mass inside `(-1, 1)`. The distribution function is continuous (no
//! atoms), so indicator truncations are insensitive to whether interval
//! endpoints are included.
//!
//! All truncated first and second moments are computed from shared closed-form
//! antiderivatives of `x·dF` and `x²·dF` on each tail. Because every moment of
//! the middle/extreme decomposition is a difference of the *same* primitive
//! evaluated at interval endpoints, the split
//! `mu + mu_plus + mu_minus = ∫ x dF` over the centering range telescopes
//! exactly in floating point — the cancellation that makes the path
//! decomposition identity hold to machine precision rather than merely to
//! discretization order.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::{open01, Stream};

/// Supported tail families. Only the canonical two-sided Pareto family is
/// implemented; the enum leaves room for other regularly varying families
/// with the same interface.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum TailFamily {
    /// `P{X > x} = p·x^{-alpha}`, `P{X < -x} = q·x^{-alpha}` for `x >= 1`.
    TwoSidedPareto,
}

/// A heavy-tailed innovation law with balanced tails.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TailBalancedLaw {
    /// Tail index, strictly between 0 and 2.
    pub alpha: f64,
    /// Upper tail weight in `[0, 1]`.
    pub p: f64,
    /// Lower tail weight, `q = 1 - p`.
    pub q: f64,
    /// Tail family.
    pub family: TailFamily,
}

/// Truncation window `[a_n, b_n]` at sample size `n`, with `m_n` the expected
/// number of upper exceedances `n·P{X > b_n}`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TruncationWindow {
    /// Lower truncation level, negative.
    pub a_n: f64,
    /// Upper truncation level, positive.
    pub b_n: f64,
    /// Expected exceedance count, in `[1, n]`.
    pub m_n: f64,
    /// Sample size, at least 2.
    pub n: usize,
}

/// First and second moments of the law truncated to a window, together with
/// the means of the two extreme tiles of the centering range.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TruncatedMoments {
    /// `E[X 1_{[a_n, b_n]}(X)]`.
    pub mu: f64,
    /// Variance of `X 1_{[a_n, b_n]}(X)`, nonnegative.
    pub sigma2: f64,
    /// `E[X 1_{(b_n, F^{-1}(1-1/n))}(X)]` — mean of the upper extreme tile.
    pub mu_plus: f64,
    /// `E[X 1_{(F^{-1}(1/n), a_n)}(X)]` — mean of the lower extreme tile.
    pub mu_minus: f64,
}

impl TailBalancedLaw {
    /// Create a law with tail index `alpha` in `(0,2)` and upper tail weight
    /// `p` in `[0,1]`; the lower weight is `q = 1 - p`.
    pub fn new(alpha: f64, p: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha < 2.0) {
            return Err(Error::Domain(format!(
                "alpha must lie strictly inside (0,2), got {alpha}"
            )));
        }
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::Domain(format!(
                "tail weight p must lie in [0,1], got {p}"
            )));
        }
        Ok(Self {
            alpha,
            p,
            q: 1.0 - p,
            family: TailFamily::TwoSidedPareto,
        })
    }

    /// Symmetric law, `p = q = 1/2`.
    pub fn symmetric(alpha: f64) -> Result<Self> {
        Self::new(alpha, 0.5)
    }

    /// Distribution function `F(x) = P{X <= x}`.
    pub fn cdf(&self, x: f64) -> f64 {
        if x >= 1.0 {
            1.0 - self.p * x.powf(-self.alpha)
        } else if x > -1.0 {
            self.q
        } else {
            self.q * (-x).powf(-self.alpha)
        }
    }

    /// Survival function `P{X > x}`.
    pub fn survival(&self, x: f64) -> f64 {
        if x >= 1.0 {
            self.p * x.powf(-self.alpha)
        } else if x > -1.0 {
            self.p
        } else {
            1.0 - self.q * (-x).powf(-self.alpha)
        }
    }

    /// Left-continuous generalized inverse `F^{-1}(u) = inf{x : F(x) >= u}`
    /// for `u` in `(0,1)`.
    ///
    /// At `u = q` the formula lands exactly on `-1`, the left endpoint of the
    /// support gap, which is the correct value for the left-continuous
    /// convention.
    pub fn quantile(&self, u: f64) -> Result<f64> {
        if !(u > 0.0 && u < 1.0) {
            return Err(Error::Domain(format!(
                "quantile argument must lie in (0,1), got {u}"
            )));
        }
        Ok(self.quantile_unchecked(u))
    }

    #[inline]
    pub(crate) fn quantile_unchecked(&self, u: f64) -> f64 {
        let inv = 1.0 / self.alpha;
        if u <= self.q {
            -(self.q / u).powf(inv)
        } else {
            (self.p / (1.0 - u)).powf(inv)
        }
    }

    /// Quantile of `|X|`: since `P{|X| > x} = x^{-alpha}` for `x >= 1`, the
    /// inverse is `(1-u)^{-1/alpha}` for `u` in `[0,1)` — at `u = 0` this is
    /// the left endpoint 1, which normalizes length-1 paths by unity.
    pub fn star_quantile(&self, u: f64) -> Result<f64> {
        if !(u >= 0.0 && u < 1.0) {
            return Err(Error::Domain(format!(
                "star quantile argument must lie in [0,1), got {u}"
            )));
        }
        Ok((1.0 - u).powf(-1.0 / self.alpha))
    }

    /// One draw by inversion.
    #[inline]
    pub fn sample_one(&self, rng: &mut Stream) -> f64 {
        self.quantile_unchecked(open01(rng))
    }

    /// `count` i.i.d. draws by inversion of uniform variates from `rng`.
    pub fn sample(&self, rng: &mut Stream, count: usize) -> Vec<f64> {
        (0..count).map(|_| self.sample_one(rng)).collect()
    }

    // ----------------------------------------------------------------------
    // Closed-form partial moments.
    //
    // The density is p·alpha·x^{-alpha-1} on x >= 1 and
    // q·alpha·(-x)^{-alpha-1} on x <= -1. The primitives below are chosen
    // once and reused by every truncated-moment quantity, so that disjoint
    // tiles of an interval telescope exactly in floating point.
    // ----------------------------------------------------------------------

    /// Antiderivative of `x dF` on the positive tail, `x >= 1`.
    #[inline]
    fn pos_first_primitive(&self, x: f64) -> f64 {
        if self.alpha == 1.0 {
            self.p * x.ln()
        } else {
            self.p * self.alpha / (1.0 - self.alpha) * x.powf(1.0 - self.alpha)
        }
    }

    /// Antiderivative of `x dF` on the negative tail, `x <= -1`.
    #[inline]
    fn neg_first_primitive(&self, x: f64) -> f64 {
        if self.alpha == 1.0 {
            self.q * (-x).ln()
        } else {
            self.q * self.alpha / (1.0 - self.alpha) * (-x).powf(1.0 - self.alpha)
        }
    }

    /// Antiderivative of `x² dF` on the positive tail, `x >= 1`.
    #[inline]
    fn pos_second_primitive(&self, x: f64) -> f64 {
        self.p * self.alpha / (2.0 - self.alpha) * x.powf(2.0 - self.alpha)
    }

    /// Antiderivative of `x² dF` on the negative tail, `x <= -1`.
    #[inline]
    fn neg_second_primitive(&self, x: f64) -> f64 {
        -self.q * self.alpha / (2.0 - self.alpha) * (-x).powf(2.0 - self.alpha)
    }

    /// `E[X 1_{[lo, hi]}(X)]` in closed form. Empty or inverted intervals
    /// give 0; endpoint inclusion is immaterial because the law has no atoms.
    pub fn partial_mean(&self, lo: f64, hi: f64) -> f64 {
        if !(lo < hi) {
            return 0.0;
        }
        let mut total = 0.0;
        if hi > 1.0 {
            total += self.pos_first_primitive(hi) - self.pos_first_primitive(lo.max(1.0));
        }
        if lo < -1.0 {
            total += self.neg_first_primitive(hi.min(-1.0)) - self.neg_first_primitive(lo);
        }
        total
    }

    /// `E[X² 1_{[lo, hi]}(X)]` in closed form, same conventions as
    /// [`partial_mean`](Self::partial_mean).
    pub fn partial_second_moment(&self, lo: f64, hi: f64) -> f64 {
        if !(lo < hi) {
            return 0.0;
        }
        let mut total = 0.0;
        if hi > 1.0 {
            total += self.pos_second_primitive(hi) - self.pos_second_primitive(lo.max(1.0));
        }
        if lo < -1.0 {
            total += self.neg_second_primitive(hi.min(-1.0)) - self.neg_second_primitive(lo);
        }
        total
    }
}

impl TruncationWindow {
    /// Build a window from explicit levels, validating the invariants
    /// `a_n < 0 < b_n`, `1 <= m_n <= n`, `n >= 2`.
    pub fn new(a_n: f64, b_n: f64, m_n: f64, n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::Validation(format!(
                "window sample size must be at least 2, got {n}"
            )));
        }
        if !(a_n < 0.0 && 0.0 < b_n) || !a_n.is_finite() || !b_n.is_finite() {
            return Err(Error::Validation(format!(
                "window levels must satisfy a_n < 0 < b_n, got a_n = {a_n}, b_n = {b_n}"
            )));
        }
        if !(m_n >= 1.0 && m_n <= n as f64) {
            return Err(Error::Validation(format!(
                "exceedance count m_n must lie in [1, n], got m_n = {m_n} at n = {n}"
            )));
        }
        Ok(Self { a_n, b_n, m_n, n })
    }
}

/// Canonical truncation window at sample size `n`: `m_n = n^theta`,
/// `b_n = F^{-1}(1 - m_n/n)` and `a_n = -F_*^{-1}(1 - m_n/n)`, so that
/// `n·P{X > b_n} = m_n` and `n·P{|X| > -a_n} = m_n`.
///
/// Errors if `theta` is outside `(0,1)`, if `n < 2`, or if the upper tail is
/// too light for the requested window (`m_n/n >= p`), which would push `b_n`
/// into the support gap.
pub fn truncation_window(law: &TailBalancedLaw, n: usize, theta: f64) -> Result<TruncationWindow> {
    if n < 2 {
        return Err(Error::Domain(format!(
            "window sample size must be at least 2, got {n}"
        )));
    }
    if !(theta > 0.0 && theta < 1.0) {
        return Err(Error::Domain(format!(
            "window exponent theta must lie in (0,1), got {theta}"
        )));
    }
    let nf = n as f64;
    let m_n = nf.powf(theta);
    let frac = m_n / nf;
    if frac >= law.p {
        return Err(Error::Domain(format!(
            "upper tail weight p = {} too small for m_n/n = {frac}: \
             the window level b_n would leave the support",
            law.p
        )));
    }
    let b_n = law.quantile(1.0 - frac)?;
    let a_n = -law.star_quantile(1.0 - frac)?;
    TruncationWindow::new(a_n, b_n, m_n, n)
}

/// Exact moments of the truncation split at window `w`.
///
/// `mu` and `sigma2` describe the middle part `X 1_{[a_n, b_n]}`; `mu_plus`
/// and `mu_minus` are the means of the extreme tiles between the window and
/// the `1/n`-quantiles. All four come from the same closed-form primitives,
/// so `mu + mu_plus + mu_minus` equals the centering integral
/// [`centering_integral`] exactly in floating point.
///
/// Errors if `b_n <= 1` (a window degenerate for this family: the whole
/// upper support would be an exceedance).
pub fn truncated_moments(law: &TailBalancedLaw, w: &TruncationWindow) -> Result<TruncatedMoments> {
    if w.b_n <= 1.0 {
        return Err(Error::Domain(format!(
            "degenerate truncation window: b_n = {} does not exceed the lower support bound 1",
            w.b_n
        )));
    }
    let nf = w.n as f64;
    let mu = law.partial_mean(w.a_n, w.b_n);
    let m2 = law.partial_second_moment(w.a_n, w.b_n);
    let sigma2 = (m2 - mu * mu).max(0.0);
    let hi = law.quantile_unchecked(1.0 - 1.0 / nf);
    let lo = law.quantile_unchecked(1.0 / nf);
    let mu_plus = law.partial_mean(w.b_n, hi);
    let mu_minus = law.partial_mean(lo, w.a_n);
    Ok(TruncatedMoments {
        mu,
        sigma2,
        mu_plus,
        mu_minus,
    })
}

/// Centering integral `∫ x dF` over the central quantile range
/// `(F^{-1}(1/n), F^{-1}(1-1/n))` — the per-step drift used to center
/// partial sums. Requires `n >= 2`.
pub fn centering_integral(law: &TailBalancedLaw, n: usize) -> Result<f64> {
    if n < 2 {
        return Err(Error::Domain(format!(
            "centering integral needs n >= 2, got {n}"
        )));
    }
    let nf = n as f64;
    let lo = law.quantile_unchecked(1.0 / nf);
    let hi = law.quantile_unchecked(1.0 - 1.0 / nf);
    Ok(law.partial_mean(lo, hi))
}

/// Karamata tail approximation to the truncated second moment:
/// `alpha/(2-alpha) · (a² F(a) + b² (1-F(b)))` for levels `a < 0 < b`.
///
/// For this family the ratio of the exact truncated variance to this
/// asymptote converges to 1 from below as the window widens.
pub fn karamata_asymptote(law: &TailBalancedLaw, a: f64, b: f64) -> Result<f64> {
    if !(a < 0.0 && 0.0 < b) {
        return Err(Error::Domain(format!(
            "asymptote levels must satisfy a < 0 < b, got a = {a}, b = {b}"
        )));
    }
    Ok(law.alpha / (2.0 - law.alpha) * (a * a * law.cdf(a) + b * b * law.survival(b)))
}
