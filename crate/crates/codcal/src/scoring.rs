//! Fitted black-box score functions: higher scores indicate likelier
//! outliers.
//!
//! Two concrete scorers are provided. The kNN scorer reports the mean
//! Euclidean distance to the `k` nearest training points (brute force, so
//! results are exactly reproducible). The Mahalanobis scorer reports
//! `sqrt((x - mu)^T Sigma^{-1} (x - mu))` with the mean and covariance
//! estimated from the training data (maximum-likelihood `1/n` normalizer,
//! plus an optional ridge on the diagonal).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A point in feature space; all vectors in one dataset share a dimension.
pub type FeatureVector = Vec<f64>;

/// An immutable fitted score function. Scoring is a pure function of the
/// fitted state and the input, so scorers are safe to share across threads.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub enum Scorer {
    /// Mean distance to the `k` nearest reference points.
    Knn {
        reference: Vec<FeatureVector>,
        k: usize,
    },
    /// Distance in the metric of the inverse covariance (row-major `d x d`).
    Mahalanobis {
        mean: Vec<f64>,
        inverse_covariance: Vec<f64>,
    },
}

/// Fits a kNN scorer on the training points.
pub fn fit_knn_scorer(train: &[FeatureVector], k: usize) -> Result<Scorer> {
    let d = check_points(train)?;
    if d == 0 {
        return Err(Error::invalid("empty training set"));
    }
    if k == 0 || k > train.len() {
        return Err(Error::invalid(format!(
            "k = {k} outside 1..={}",
            train.len()
        )));
    }
    Ok(Scorer::Knn {
        reference: train.to_vec(),
        k,
    })
}

/// Fits a Mahalanobis scorer on the training points.
///
/// `ridge` is added to the covariance diagonal before inversion; with
/// `ridge = 0` a singular covariance is a numerical failure.
pub fn fit_mahalanobis_scorer(train: &[FeatureVector], ridge: f64) -> Result<Scorer> {
    let d = check_points(train)?;
    if train.len() < 2 {
        return Err(Error::invalid("need at least 2 training points"));
    }
    if !(ridge.is_finite() && ridge >= 0.0) {
        return Err(Error::invalid(format!("ridge {ridge} must be >= 0")));
    }
    let n = train.len() as f64;
    let mut mean = vec![0.0; d];
    for x in train {
        for (m, v) in mean.iter_mut().zip(x) {
            *m += v;
        }
    }
    for m in &mut mean {
        *m /= n;
    }
    let mut cov = vec![0.0; d * d];
    for x in train {
        for i in 0..d {
            let zi = x[i] - mean[i];
            for j in 0..d {
                cov[i * d + j] += zi * (x[j] - mean[j]);
            }
        }
    }
    for c in &mut cov {
        *c /= n;
    }
    for i in 0..d {
        cov[i * d + i] += ridge;
    }
    let inverse_covariance = invert_spd(&cov, d).ok_or_else(|| {
        Error::NumericalFailure(format!(
            "covariance not positive definite (d = {d}, ridge = {ridge})"
        ))
    })?;
    Ok(Scorer::Mahalanobis {
        mean,
        inverse_covariance,
    })
}

impl Scorer {
    /// Feature dimension the scorer was fitted on.
    pub fn dim(&self) -> usize {
        match self {
            Scorer::Knn { reference, .. } => reference.first().map_or(0, Vec::len),
            Scorer::Mahalanobis { mean, .. } => mean.len(),
        }
    }

    /// Scores a single point.
    pub fn score(&self, x: &[f64]) -> Result<f64> {
        if x.len() != self.dim() {
            return Err(Error::invalid(format!(
                "query dimension {} does not match fitted dimension {}",
                x.len(),
                self.dim()
            )));
        }
        match self {
            Scorer::Knn { reference, k } => {
                let mut dists: Vec<f64> = reference
                    .iter()
                    .map(|r| {
                        r.iter()
                            .zip(x)
                            .map(|(a, b)| (a - b) * (a - b))
                            .sum::<f64>()
                            .sqrt()
                    })
                    .collect();
                dists.sort_unstable_by(f64::total_cmp);
                Ok(dists[..*k].iter().sum::<f64>() / *k as f64)
            }
            Scorer::Mahalanobis {
                mean,
                inverse_covariance,
            } => {
                let d = mean.len();
                let z: Vec<f64> = x.iter().zip(mean).map(|(a, m)| a - m).collect();
                let mut quad = 0.0;
                for i in 0..d {
                    let mut row = 0.0;
                    for j in 0..d {
                        row += inverse_covariance[i * d + j] * z[j];
                    }
                    quad += z[i] * row;
                }
                Ok(quad.max(0.0).sqrt())
            }
        }
    }

    /// Scores each point; element `i` equals `score(xs[i])`.
    pub fn score_batch(&self, xs: &[FeatureVector]) -> Result<Vec<f64>> {
        xs.iter().map(|x| self.score(x)).collect()
    }
}

/// Batch scoring as a free function, mirroring the construction-phase step of
/// computing all calibration scores at once.
pub fn score_batch(scorer: &Scorer, xs: &[FeatureVector]) -> Result<Vec<f64>> {
    scorer.score_batch(xs)
}

fn check_points(points: &[FeatureVector]) -> Result<usize> {
    let d = points.first().map_or(0, Vec::len);
    for (i, p) in points.iter().enumerate() {
        if p.len() != d {
            return Err(Error::invalid(format!(
                "point {i} has dimension {} but point 0 has {d}",
                p.len()
            )));
        }
        if p.iter().any(|v| !v.is_finite()) {
            return Err(Error::invalid(format!("point {i} has a non-finite entry")));
        }
    }
    if d == 0 && !points.is_empty() {
        return Err(Error::invalid("points must have dimension >= 1"));
    }
    Ok(if points.is_empty() { 0 } else { d })
}

/// Inverse of a symmetric positive-definite matrix via Cholesky;
/// `None` when a pivot is not strictly positive.
fn invert_spd(a: &[f64], d: usize) -> Option<Vec<f64>> {
    // Lower Cholesky factor L with a = L L^T.
    let mut l = vec![0.0; d * d];
    for i in 0..d {
        for j in 0..=i {
            let mut sum = a[i * d + j];
            for k in 0..j {
                sum -= l[i * d + k] * l[j * d + k];
            }
            if i == j {
                if sum <= 0.0 || !sum.is_finite() {
                    return None;
                }
                l[i * d + i] = sum.sqrt();
            } else {
                l[i * d + j] = sum / l[j * d + j];
            }
        }
    }
    // Invert L by forward substitution.
    let mut linv = vec![0.0; d * d];
    for i in 0..d {
        linv[i * d + i] = 1.0 / l[i * d + i];
        for j in 0..i {
            let mut sum = 0.0;
            for k in j..i {
                sum -= l[i * d + k] * linv[k * d + j];
            }
            linv[i * d + j] = sum / l[i * d + i];
        }
    }
    // a^{-1} = L^{-T} L^{-1}; the summation form makes the result exactly
    // symmetric.
    let mut inv = vec![0.0; d * d];
    for i in 0..d {
        for j in 0..d {
            let mut sum = 0.0;
            for k in i.max(j)..d {
                sum += linv[k * d + i] * linv[k * d + j];
            }
            inv[i * d + j] = sum;
        }
    }
    Some(inv)
}
