//! Data-cleaning strategies for contaminated calibration sets: Naive-Trim,
//! Label-Trim (annotation of the largest scores under a labeling budget),
//! and Small-Clean (a small confirmed-inlier reference set).
//!
//! All three operate on a [`ScoreSet`]; ties are broken by the stable order
//! `(score, original index)`, so results are reproducible with or without
//! jitter.

use rand::seq::index::sample;
use serde::{Deserialize, Serialize};

use crate::conformal::{self, conformal_p_value, PValue, ScoreSet};
use crate::error::{Error, Result};
use crate::rng;

/// Source of true labels for annotation queries: 0 = inlier, 1 = outlier.
/// Must answer consistently across repeated queries.
pub trait LabelOracle {
    fn label(&self, index: usize) -> u8;
}

impl LabelOracle for [u8] {
    fn label(&self, index: usize) -> u8 {
        self[index]
    }
}

impl LabelOracle for Vec<u8> {
    fn label(&self, index: usize) -> u8 {
        self[index]
    }
}

/// Result of a Label-Trim construction phase: the surviving calibration set
/// plus the annotation log.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TrimOutcome {
    /// Surviving calibration scores (original order preserved).
    pub trimmed: ScoreSet,
    /// Original indices of the annotated (largest-score) points, ascending.
    pub annotated_indices: Vec<usize>,
    /// Annotated indices whose oracle label was 1; these were removed.
    pub removed_indices: Vec<usize>,
    /// Number of annotation queries spent: `min(m, n)`.
    pub budget_used: usize,
}

/// Indices of the `m` largest scores, ties broken by original index.
/// Returned ascending by original index.
fn top_m_indices(scores: &[f64], m: usize) -> Vec<usize> {
    let mut order: Vec<usize> = (0..scores.len()).collect();
    order.sort_by(|&a, &b| scores[a].total_cmp(&scores[b]).then(a.cmp(&b)));
    let mut top: Vec<usize> = order[scores.len() - m..].to_vec();
    top.sort_unstable();
    top
}

fn remove_indices(cal: &ScoreSet, removed: &[usize]) -> ScoreSet {
    let drop: std::collections::HashSet<usize> = removed.iter().copied().collect();
    let keep: Vec<usize> = (0..cal.len()).filter(|i| !drop.contains(i)).collect();
    cal.subset(&keep)
}

/// Removes the `m` largest scores without annotation.
pub fn naive_trim(cal: &ScoreSet, m: usize) -> Result<ScoreSet> {
    if m > cal.len() {
        return Err(Error::invalid(format!(
            "cannot remove {m} of {} scores",
            cal.len()
        )));
    }
    Ok(remove_indices(cal, &top_m_indices(cal.scores(), m)))
}

/// Label-Trim construction phase: annotate the `min(m, n)` largest scores
/// and remove exactly those the oracle confirms as outliers. Unannotated
/// points and annotated inliers all survive.
pub fn label_trim<O: LabelOracle + ?Sized>(cal: &ScoreSet, m: usize, oracle: &O) -> TrimOutcome {
    let budget_used = m.min(cal.len());
    let annotated_indices = top_m_indices(cal.scores(), budget_used);
    let removed_indices: Vec<usize> = annotated_indices
        .iter()
        .copied()
        .filter(|&i| oracle.label(i) == 1)
        .collect();
    TrimOutcome {
        trimmed: remove_indices(cal, &removed_indices),
        annotated_indices,
        removed_indices,
        budget_used,
    }
}

/// Label-Trim testing phase: the conformal p-value against the trimmed set.
pub fn label_trim_p_value(outcome: &TrimOutcome, test_score: f64) -> Result<PValue> {
    conformal_p_value(&outcome.trimmed, test_score)
}

/// Draws `m` calibration points uniformly without replacement and keeps only
/// those the oracle confirms as inliers.
pub fn small_clean<O: LabelOracle + ?Sized>(
    cal: &ScoreSet,
    m: usize,
    selection_seed: u64,
    oracle: &O,
) -> Result<ScoreSet> {
    if m > cal.len() {
        return Err(Error::invalid(format!(
            "cannot draw {m} of {} points",
            cal.len()
        )));
    }
    let mut rng = rng::stream(selection_seed);
    let mut drawn: Vec<usize> = sample(&mut rng, cal.len(), m).into_iter().collect();
    drawn.sort_unstable();
    let kept: Vec<usize> = drawn.into_iter().filter(|&i| oracle.label(i) == 0).collect();
    Ok(cal.subset(&kept))
}

/// The validity condition of the Label-Trim bound: `m <= alpha * (n + 1)`,
/// evaluated exactly (see [`crate::conformal::PValue::is_at_most`]).
pub fn budget_condition_holds(m: u64, n: u64, alpha: f64) -> bool {
    m <= conformal::floor_scaled(alpha, n + 1)
}
