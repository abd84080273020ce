//! Conformal p-values, empirical quantile thresholds, rejection decisions,
//! and the tie-breaking jitter.
//!
//! A conformal p-value for a test score `t` against a calibration set of `n`
//! scores is `(1 + #{i : s_i >= t}) / (1 + n)`. Rejecting when the p-value is
//! at most `alpha` is equivalent to `t` exceeding the `ceil((1-alpha)(n+1))`-th
//! smallest element of the calibration scores extended with `+inf`. This
//! module keeps that equivalence exact: p-values are carried as integer
//! fractions, and comparisons against `alpha` use exact integer arithmetic on
//! the float's binary representation rather than a rounded product.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng;

/// An ordered multiset of nonconformity scores with optional 0/1 labels
/// (0 = inlier, 1 = outlier).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScoreSet {
    scores: Vec<f64>,
    labels: Option<Vec<u8>>,
}

impl ScoreSet {
    /// Builds an unlabeled score set. All scores must be finite.
    pub fn new(scores: Vec<f64>) -> Result<Self> {
        if let Some(s) = scores.iter().find(|s| !s.is_finite()) {
            return Err(Error::invalid(format!("non-finite score {s}")));
        }
        Ok(Self {
            scores,
            labels: None,
        })
    }

    /// Builds a labeled score set; labels must match in length and be 0/1.
    pub fn with_labels(scores: Vec<f64>, labels: Vec<u8>) -> Result<Self> {
        if labels.len() != scores.len() {
            return Err(Error::invalid(format!(
                "{} labels for {} scores",
                labels.len(),
                scores.len()
            )));
        }
        if labels.iter().any(|&l| l > 1) {
            return Err(Error::invalid("labels must be 0 or 1"));
        }
        let mut set = Self::new(scores)?;
        set.labels = Some(labels);
        Ok(set)
    }

    pub fn len(&self) -> usize {
        self.scores.len()
    }

    pub fn is_empty(&self) -> bool {
        self.scores.is_empty()
    }

    pub fn scores(&self) -> &[f64] {
        &self.scores
    }

    pub fn labels(&self) -> Option<&[u8]> {
        self.labels.as_deref()
    }

    /// Number of entries labeled 1; `None` when unlabeled.
    pub fn outlier_count(&self) -> Option<usize> {
        self.labels
            .as_ref()
            .map(|ls| ls.iter().filter(|&&l| l == 1).count())
    }

    /// Indices carrying the given label; empty when unlabeled.
    pub fn indices_with_label(&self, label: u8) -> Vec<usize> {
        match &self.labels {
            Some(ls) => ls
                .iter()
                .enumerate()
                .filter(|(_, &l)| l == label)
                .map(|(i, _)| i)
                .collect(),
            None => Vec::new(),
        }
    }

    /// The sub-multiset at the given indices, preserving their order.
    pub fn subset(&self, indices: &[usize]) -> ScoreSet {
        ScoreSet {
            scores: indices.iter().map(|&i| self.scores[i]).collect(),
            labels: self
                .labels
                .as_ref()
                .map(|ls| indices.iter().map(|&i| ls[i]).collect()),
        }
    }
}

/// A conformal p-value carried exactly as `count / denominator` with
/// `denominator = n + 1` and `count` in `1..=n+1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PValue {
    count: u64,
    denominator: u64,
}

impl PValue {
    pub fn count(&self) -> u64 {
        self.count
    }

    pub fn denominator(&self) -> u64 {
        self.denominator
    }

    /// Decimal value of the fraction.
    pub fn value(&self) -> f64 {
        self.count as f64 / self.denominator as f64
    }

    /// Exact test of `self <= alpha`.
    ///
    /// Since the p-value is `k/(n+1)` with integer `k`, `p <= alpha` holds iff
    /// `k <= floor(alpha * (n+1))`, which [`floor_scaled`] evaluates without
    /// floating-point rounding.
    pub fn is_at_most(&self, alpha: f64) -> bool {
        self.count <= floor_scaled(alpha, self.denominator)
    }
}

impl std::fmt::Display for PValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}/{}", self.count, self.denominator)
    }
}

/// The calibration quantile threshold: the `index`-th smallest element of
/// the scores extended with `+inf` (so `value` may be infinite).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuantileThreshold {
    /// Threshold value; `f64::INFINITY` when the index exceeds all data.
    pub value: f64,
    /// 1-based order-statistic index `ceil((1-alpha)(n+1))`.
    pub index: usize,
}

/// Exact `floor(alpha * den)` for finite `alpha >= 0`.
///
/// Decomposes `alpha` into its binary mantissa and exponent so the product is
/// computed exactly in integer arithmetic; a rounded `alpha * den as f64`
/// could flip rejection decisions when the product lies on an integer.
pub(crate) fn floor_scaled(alpha: f64, den: u64) -> u64 {
    scaled(alpha, den, false)
}

/// Exact `ceil(alpha * den)` for finite `alpha >= 0`.
pub(crate) fn ceil_scaled(alpha: f64, den: u64) -> u64 {
    scaled(alpha, den, true)
}

fn scaled(alpha: f64, den: u64, round_up: bool) -> u64 {
    debug_assert!(alpha.is_finite() && alpha >= 0.0);
    if alpha == 0.0 || den == 0 {
        return 0;
    }
    let bits = alpha.to_bits();
    let exp_field = ((bits >> 52) & 0x7ff) as i64;
    let frac = bits & ((1u64 << 52) - 1);
    // alpha = mantissa * 2^exp
    let (mantissa, exp) = if exp_field == 0 {
        (frac, -1074i64)
    } else {
        (frac | (1u64 << 52), exp_field - 1075)
    };
    let prod = mantissa as u128 * den as u128; // < 2^53 * 2^64 = 2^117
    if exp >= 0 {
        return prod
            .checked_shl(exp as u32)
            .map_or(u64::MAX, |v| v.min(u64::MAX as u128) as u64);
    }
    let shift = (-exp) as u32;
    if shift >= 128 {
        return u64::from(round_up); // 0 < alpha * den < 1
    }
    let down = prod >> shift;
    let value = if round_up && (down << shift) != prod {
        down + 1
    } else {
        down
    };
    value.min(u64::MAX as u128) as u64
}

/// The conformal p-value of `test_score` against the calibration set:
/// `(1 + #{i : s_i >= test_score}) / (1 + n)`.
///
/// An empty calibration set yields `1/1`, so downstream methods with zero
/// surviving reference points remain well defined.
pub fn conformal_p_value(cal: &ScoreSet, test_score: f64) -> Result<PValue> {
    if !test_score.is_finite() {
        return Err(Error::invalid(format!(
            "non-finite test score {test_score}"
        )));
    }
    let count = 1 + cal.scores().iter().filter(|&&s| s >= test_score).count() as u64;
    Ok(PValue {
        count,
        denominator: 1 + cal.len() as u64,
    })
}

/// p-value against calibration scores already sorted ascending; same
/// contract as [`conformal_p_value`] but O(log n) per test score.
pub(crate) fn p_value_sorted(sorted_cal: &[f64], test_score: f64) -> Result<PValue> {
    if !test_score.is_finite() {
        return Err(Error::invalid(format!(
            "non-finite test score {test_score}"
        )));
    }
    let below = sorted_cal.partition_point(|&s| s < test_score);
    Ok(PValue {
        count: 1 + (sorted_cal.len() - below) as u64,
        denominator: 1 + sorted_cal.len() as u64,
    })
}

/// The `(1-alpha)` empirical quantile threshold of the calibration scores
/// extended with `+inf`.
///
/// The 1-based index is `ceil((1-alpha)(n+1))`, evaluated exactly through the
/// identity `ceil((1-alpha)(n+1)) = n+1 - floor(alpha(n+1))` so it agrees
/// bit-for-bit with the p-value rejection rule.
pub fn quantile_threshold(cal: &ScoreSet, alpha: f64) -> Result<QuantileThreshold> {
    check_alpha(alpha)?;
    let n = cal.len();
    let index = (n as u64 + 1 - floor_scaled(alpha, n as u64 + 1)) as usize;
    let value = if index > n {
        f64::INFINITY
    } else {
        let mut sorted = cal.scores().to_vec();
        sorted.sort_unstable_by(f64::total_cmp);
        sorted[index - 1]
    };
    Ok(QuantileThreshold { value, index })
}

/// Rejects the inlier hypothesis iff `p <= alpha` (boundary inclusive).
pub fn reject(p: PValue, alpha: f64) -> bool {
    p.is_at_most(alpha)
}

/// Adds `epsilon * U_i` to each score, with `U_i` i.i.d. uniform on `[0,1)`
/// from the seeded generator. Requires `epsilon > 0`; strict orderings of
/// entries whose gap exceeds `epsilon` are preserved.
pub fn jitter_scores(scores: &[f64], epsilon: f64, seed: u64) -> Vec<f64> {
    debug_assert!(epsilon > 0.0);
    let mut rng = rng::stream(seed);
    scores
        .iter()
        .map(|&s| s + epsilon * rng.random::<f64>())
        .collect()
}

/// Default jitter magnitude: `1e-9` of the score range with an absolute floor
/// of `1e-12`, below any meaningful score gap while avoiding denormals.
pub fn default_jitter_epsilon(scores: &[f64]) -> f64 {
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for &s in scores {
        lo = lo.min(s);
        hi = hi.max(s);
    }
    let range = if hi > lo { hi - lo } else { 0.0 };
    (1e-9 * range).max(1e-12)
}

pub(crate) fn check_alpha(alpha: f64) -> Result<()> {
    if !(alpha.is_finite() && 0.0 < alpha && alpha < 1.0) {
        return Err(Error::invalid(format!("alpha {alpha} outside (0, 1)")));
    }
    Ok(())
}
