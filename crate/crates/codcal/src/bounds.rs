//! Closed-form type-I error bounds for conformal outlier detection with
//! contaminated calibration data, plus the empirical-CDF primitive they
//! share.
//!
//! Expectations in the contamination bounds are estimated by Monte-Carlo
//! sample means over trials; the evaluators accept either per-trial values
//! or pre-averaged values, so both per-trial domination checks and aggregate
//! checks are possible.

/// Fraction of entries `<= t`; 1 for `t = +inf` on nonempty input, and 0 for
/// an empty vector by convention (callers multiply it by an outlier count of
/// zero, so degenerate contamination terms vanish exactly).
pub fn empirical_cdf(scores: &[f64], t: f64) -> f64 {
    if scores.is_empty() {
        return 0.0;
    }
    scores.iter().filter(|&&s| s <= t).count() as f64 / scores.len() as f64
}

/// Two-sided coverage interval for a clean calibration set of size `n`:
/// `(max(0, alpha - 1/(n+1)), alpha)`.
pub fn oracle_interval(n: u64, alpha: f64) -> (f64, f64) {
    ((alpha - 1.0 / (n as f64 + 1.0)).max(0.0), alpha)
}

/// Upper bound on the type-I error of the standard conformal p-value under
/// contamination:
/// `alpha - (n1 / (n0 + 1)) * (1 - alpha - cdf_at_quantile)`,
/// where `cdf_at_quantile` estimates the expected empirical CDF of the
/// outlier scores at the contaminated calibration quantile.
pub fn lemma_bound(alpha: f64, n0: u64, n1: u64, cdf_at_quantile: f64) -> f64 {
    alpha - n1 as f64 / (n0 as f64 + 1.0) * (1.0 - alpha - cdf_at_quantile)
}

/// Upper bound on the type-I error of the Label-Trim p-value:
/// `alpha + 1/(n0 + 1) - (lt_outlier_count / (n0 + 1)) * ((1 - alpha) - cdf_at_quantile)`,
/// where `lt_outlier_count` is the (possibly trial-averaged) number of
/// outliers surviving the trim and `cdf_at_quantile` the empirical CDF of
/// their scores at the trimmed-set quantile.
pub fn theorem_lt_bound(alpha: f64, n0: u64, lt_outlier_count: f64, cdf_at_quantile: f64) -> f64 {
    let n0p1 = n0 as f64 + 1.0;
    alpha + 1.0 / n0p1 - lt_outlier_count / n0p1 * ((1.0 - alpha) - cdf_at_quantile)
}

/// Mixture-model conservativeness bound:
/// `alpha - delta * f0_minus_f1`, with `delta` the population contamination
/// proportion and `f0_minus_f1` an estimate of `E[F0(Q) - F1(Q)]`.
pub fn mixture_bound(alpha: f64, delta: f64, f0_minus_f1: f64) -> f64 {
    alpha - delta * f0_minus_f1
}
