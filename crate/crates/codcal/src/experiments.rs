//! Seeded Monte-Carlo harness comparing the five calibration methods
//! (Standard, Oracle, Naive-Trim, Small-Clean, Label-Trim) across random
//! splits, computing type-I error, power, trimmed-point counts, and the
//! per-trial quantities entering the theoretical bounds.
//!
//! Determinism contract: `(config, master_seed)` fully determines every
//! output bit. Each trial owns a derived seed, trials are embarrassingly
//! parallel, and aggregation reduces in trial order, so results are
//! identical at any worker count.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::bounds::empirical_cdf;
use crate::conformal::{
    self, default_jitter_epsilon, jitter_scores, quantile_threshold, PValue, ScoreSet,
};
use crate::dataio::{gen_gaussian_mixture, make_splits, LabeledDataset, SplitSpec};
use crate::error::{Error, Result};
use crate::rng::{derive_seed, roles};
use crate::scoring::{fit_knn_scorer, fit_mahalanobis_scorer, FeatureVector, Scorer};
use crate::trimming::{label_trim, naive_trim, small_clean};

/// The calibration methods under comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    /// Contaminated calibration set used as-is.
    Standard,
    /// Infeasible benchmark: calibration on the true inliers only.
    Oracle,
    /// Top scores removed without annotation.
    NaiveTrim,
    /// Budget spent on a random subset; confirmed inliers form a small
    /// clean reference set.
    SmallClean,
    /// Budget spent annotating the largest scores; confirmed outliers
    /// removed.
    LabelTrim,
}

impl Method {
    pub const ALL: [Method; 5] = [
        Method::Standard,
        Method::Oracle,
        Method::NaiveTrim,
        Method::SmallClean,
        Method::LabelTrim,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Method::Standard => "standard",
            Method::Oracle => "oracle",
            Method::NaiveTrim => "naive-trim",
            Method::SmallClean => "small-clean",
            Method::LabelTrim => "label-trim",
        }
    }
}

/// Synthetic Gaussian-mixture pools the splits are drawn from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DataSpec {
    pub inlier_pool: usize,
    pub outlier_pool: usize,
    pub dim: usize,
    /// Outlier mean shift per coordinate.
    pub shift: f64,
    /// Outlier standard deviation.
    #[serde(default = "one")]
    pub scale: f64,
}

fn one() -> f64 {
    1.0
}

/// Which score function the trial fits on its training split.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ScorerSpec {
    Knn { k: usize },
    Mahalanobis {
        #[serde(default)]
        ridge: f64,
    },
}

impl ScorerSpec {
    pub fn fit(&self, train: &[FeatureVector]) -> Result<Scorer> {
        match self {
            ScorerSpec::Knn { k } => fit_knn_scorer(train, *k),
            ScorerSpec::Mahalanobis { ridge } => fit_mahalanobis_scorer(train, *ridge),
        }
    }
}

/// How many points Naive-Trim removes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "rule", rename_all = "kebab-case")]
pub enum NaiveTrimRule {
    /// Remove `round(rate * n)`, matching the injected contamination.
    MatchRate,
    /// Remove a fixed count.
    Fixed { count: usize },
}

/// Sweepable experiment axes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SweepAxis {
    ContaminationRate,
    Budget,
    Alpha,
}

/// Optional sweep section of a config file: run the experiment once per
/// value along the axis.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepSpec {
    pub axis: SweepAxis,
    pub values: Vec<f64>,
}

/// Full description of one Monte-Carlo experiment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub data: DataSpec,
    /// Split sizes, contamination rate, and injection strategy. The `seed`
    /// field is ignored by the harness: each trial derives its own split
    /// seed from `master_seed`.
    pub split: SplitSpec,
    /// Target type-I error levels.
    #[serde(rename = "alpha")]
    pub alphas: Vec<f64>,
    /// Labeling budget `m` for Label-Trim and Small-Clean.
    pub budget: usize,
    #[serde(default = "default_naive_rule")]
    pub naive_rule: NaiveTrimRule,
    pub methods: Vec<Method>,
    pub trials: usize,
    pub master_seed: u64,
    pub scorer: ScorerSpec,
    /// Tie-breaking jitter, applied once and jointly to calibration and test
    /// scores before any trimming.
    #[serde(default = "default_true")]
    pub jitter: bool,
    /// Jitter magnitude override; defaults to 1e-9 of the score range.
    #[serde(default)]
    pub jitter_epsilon: Option<f64>,
    /// When present, drivers run one experiment per axis value instead of a
    /// single run; ignored by [`run_monte_carlo`] itself.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sweep: Option<SweepSpec>,
}

fn default_naive_rule() -> NaiveTrimRule {
    NaiveTrimRule::MatchRate
}

fn default_true() -> bool {
    true
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        if self.data.dim == 0 {
            return Err(Error::invalid("data.dim must be >= 1"));
        }
        if !(self.data.scale.is_finite() && self.data.scale > 0.0) {
            return Err(Error::invalid("data.scale must be positive"));
        }
        if !self.data.shift.is_finite() {
            return Err(Error::invalid("data.shift must be finite"));
        }
        self.split.validate()?;
        if self.alphas.is_empty() {
            return Err(Error::invalid("alpha grid must be nonempty"));
        }
        for &a in &self.alphas {
            conformal::check_alpha(a)?;
        }
        if self.trials == 0 {
            return Err(Error::invalid("trials must be >= 1"));
        }
        if self.methods.is_empty() {
            return Err(Error::invalid("methods must be nonempty"));
        }
        if self.methods.contains(&Method::SmallClean) && self.budget > self.split.cal_size {
            return Err(Error::invalid(format!(
                "budget {} exceeds calibration size {} required by small-clean",
                self.budget, self.split.cal_size
            )));
        }
        if let NaiveTrimRule::Fixed { count } = self.naive_rule {
            if self.methods.contains(&Method::NaiveTrim) && count > self.split.cal_size {
                return Err(Error::invalid(format!(
                    "naive-trim count {count} exceeds calibration size {}",
                    self.split.cal_size
                )));
            }
        }
        match self.scorer {
            ScorerSpec::Knn { k } => {
                if k == 0 || k > self.split.train_size {
                    return Err(Error::invalid(format!(
                        "scorer k = {k} outside 1..=train_size ({})",
                        self.split.train_size
                    )));
                }
            }
            ScorerSpec::Mahalanobis { ridge } => {
                if !(ridge.is_finite() && ridge >= 0.0) {
                    return Err(Error::invalid("scorer ridge must be >= 0"));
                }
            }
        }
        if let Some(eps) = self.jitter_epsilon {
            if !(eps.is_finite() && eps > 0.0) {
                return Err(Error::invalid("jitter_epsilon must be positive"));
            }
        }
        Ok(())
    }

    /// Enabled methods in canonical (paper) order, deduplicated.
    pub fn enabled_methods(&self) -> Vec<Method> {
        Method::ALL
            .into_iter()
            .filter(|m| self.methods.contains(m))
            .collect()
    }

    /// SHA-256 hex digest of the canonical JSON serialization.
    pub fn digest(&self) -> String {
        let bytes = serde_json::to_vec(self).expect("config serializes");
        hex(&Sha256::digest(&bytes))
    }
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

/// Metrics for one (method, alpha) cell of one trial.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialRow {
    pub method: Method,
    pub alpha: f64,
    /// Fraction of test inliers rejected; `None` without test inliers.
    pub type_i_error: Option<f64>,
    /// Fraction of test outliers rejected; `None` without test outliers.
    pub power: Option<f64>,
    /// Calibration points this method removed, by true label.
    pub trimmed_outliers: u64,
    pub trimmed_inliers: u64,
    /// Standard rows: empirical CDF of the calibration outlier scores at the
    /// calibration quantile. Label-Trim rows: the same quantity on the
    /// trimmed set. `None` elsewhere.
    pub bound_cdf: Option<f64>,
    /// Label-Trim rows: outliers surviving the trim.
    pub lt_outlier_count: Option<u64>,
    /// Label-Trim rows: the bracketed term of the validity bound,
    /// `(n1_lt / (n0 + 1)) * ((1 - alpha) - bound_cdf)`.
    pub lt_bracket: Option<f64>,
}

/// All metrics produced by one trial.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialMetrics {
    pub trial: usize,
    /// SHA-256 over the jittered calibration and test score vectors; equal
    /// digests across method subsets certify that every method consumed the
    /// same scores.
    pub score_digest: String,
    /// One row per enabled method per alpha, methods in canonical order.
    pub rows: Vec<TrialRow>,
}

/// Mean and standard error over trials (`se = sample stddev / sqrt(trials)`,
/// 0 for a single trial).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeanSe {
    pub mean: f64,
    pub se: f64,
}

impl MeanSe {
    pub fn from_samples(xs: &[f64]) -> MeanSe {
        let n = xs.len() as f64;
        let mean = xs.iter().sum::<f64>() / n;
        let se = if xs.len() < 2 {
            0.0
        } else {
            let var = xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (n - 1.0);
            (var / n).sqrt()
        };
        MeanSe { mean, se }
    }
}

/// Aggregated metrics for one (method, alpha) cell.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AggregateRow {
    pub method: Method,
    pub alpha: f64,
    pub type_i_error: Option<MeanSe>,
    pub power: Option<MeanSe>,
    pub trimmed_outliers: MeanSe,
    pub trimmed_inliers: MeanSe,
    pub bound_cdf: Option<MeanSe>,
    pub lt_outlier_count: Option<MeanSe>,
    pub lt_bracket: Option<MeanSe>,
}

/// Trial-averaged metrics for a whole experiment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AggregateMetrics {
    pub trials: usize,
    pub rows: Vec<AggregateRow>,
}

impl AggregateMetrics {
    /// The row for a given method and alpha, if present.
    pub fn row(&self, method: Method, alpha: f64) -> Option<&AggregateRow> {
        self.rows
            .iter()
            .find(|r| r.method == method && r.alpha == alpha)
    }
}

/// One point of a parameter sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepPoint {
    pub value: f64,
    pub metrics: AggregateMetrics,
}

/// Aggregates along a swept axis, one per axis value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepResult {
    pub axis: SweepAxis,
    pub points: Vec<SweepPoint>,
}

/// Fraction of p-values at or below `alpha` among test inliers.
pub fn type_i_error(inlier_p_values: &[PValue], alpha: f64) -> Result<f64> {
    rejection_rate(inlier_p_values, alpha)
}

/// Fraction of p-values at or below `alpha` among test outliers.
pub fn power(outlier_p_values: &[PValue], alpha: f64) -> Result<f64> {
    rejection_rate(outlier_p_values, alpha)
}

fn rejection_rate(p_values: &[PValue], alpha: f64) -> Result<f64> {
    if p_values.is_empty() {
        return Err(Error::invalid("empty p-value list"));
    }
    let rejected = p_values.iter().filter(|p| p.is_at_most(alpha)).count();
    Ok(rejected as f64 / p_values.len() as f64)
}

/// Pools and the pool-ranking scorer, shared by every trial of one
/// experiment.
struct TrialContext {
    inlier_pool: LabeledDataset,
    outlier_pool: LabeledDataset,
    injection_scorer: Option<Scorer>,
}

impl TrialContext {
    fn build(config: &ExperimentConfig) -> Result<Self> {
        let inlier_pool = gen_gaussian_mixture(
            config.data.inlier_pool,
            0,
            config.data.dim,
            config.data.shift,
            config.data.scale,
            derive_seed(config.master_seed, &[roles::POOL_INLIER]),
        );
        let outlier_pool = gen_gaussian_mixture(
            0,
            config.data.outlier_pool,
            config.data.dim,
            config.data.shift,
            config.data.scale,
            derive_seed(config.master_seed, &[roles::POOL_OUTLIER]),
        );
        // Percentile/drift eligibility needs a pool ranking before any trial
        // split exists, so the ranking scorer is fitted once on the inlier
        // pool.
        let injection_scorer = if config.split.injection.needs_scorer() {
            Some(config.scorer.fit(&inlier_pool.points)?)
        } else {
            None
        };
        Ok(TrialContext {
            inlier_pool,
            outlier_pool,
            injection_scorer,
        })
    }
}

/// Runs a single trial: derive the trial seed, build splits, fit one scorer
/// on the contaminated training split, score everything once, and evaluate
/// every enabled method on the same scores.
pub fn run_trial(config: &ExperimentConfig, trial_index: usize) -> Result<TrialMetrics> {
    config.validate()?;
    let ctx = TrialContext::build(config)?;
    run_trial_in(&ctx, config, trial_index)
}

fn run_trial_in(
    ctx: &TrialContext,
    config: &ExperimentConfig,
    trial: usize,
) -> Result<TrialMetrics> {
    let mut spec = config.split.clone();
    spec.seed = derive_seed(config.master_seed, &[roles::SPLIT, trial as u64]);
    let splits = make_splits(
        &ctx.inlier_pool,
        &ctx.outlier_pool,
        &spec,
        ctx.injection_scorer.as_ref(),
    )?;

    let scorer = config.scorer.fit(&splits.train.points)?;
    let mut cal_scores = scorer.score_batch(&splits.cal.points)?;
    let mut tin_scores = scorer.score_batch(&splits.test_inlier.points)?;
    let mut tout_scores = scorer.score_batch(&splits.test_outlier.points)?;

    if config.jitter {
        let mut joint = cal_scores.clone();
        joint.extend_from_slice(&tin_scores);
        joint.extend_from_slice(&tout_scores);
        let eps = config
            .jitter_epsilon
            .unwrap_or_else(|| default_jitter_epsilon(&joint));
        let jittered = jitter_scores(
            &joint,
            eps,
            derive_seed(config.master_seed, &[roles::JITTER, trial as u64]),
        );
        let (a, rest) = jittered.split_at(cal_scores.len());
        let (b, c) = rest.split_at(tin_scores.len());
        cal_scores = a.to_vec();
        tin_scores = b.to_vec();
        tout_scores = c.to_vec();
    }

    let mut hasher = Sha256::new();
    for s in cal_scores.iter().chain(&tin_scores).chain(&tout_scores) {
        hasher.update(s.to_le_bytes());
    }
    let score_digest = hex(&hasher.finalize());

    let cal = ScoreSet::with_labels(cal_scores, splits.cal.labels.clone())?;
    let n1 = cal.outlier_count().unwrap_or(0) as u64;
    let n0 = cal.len() as u64 - n1;
    let oracle_labels = splits.cal.labels;

    let mut rows = Vec::new();
    for method in config.enabled_methods() {
        let mut lt_surviving_outliers = None;
        let mut lt_outlier_scores: Vec<f64> = Vec::new();
        let (reference, trimmed_outliers, trimmed_inliers) = match method {
            Method::Standard => (cal.clone(), 0, 0),
            Method::Oracle => (cal.subset(&cal.indices_with_label(0)), n1, 0),
            Method::NaiveTrim => {
                let m = match config.naive_rule {
                    NaiveTrimRule::MatchRate => spec.outlier_count(cal.len()),
                    NaiveTrimRule::Fixed { count } => count,
                };
                let trimmed = naive_trim(&cal, m)?;
                let removed_outliers = n1 - trimmed.outlier_count().unwrap_or(0) as u64;
                (trimmed, removed_outliers, m as u64 - removed_outliers)
            }
            Method::SmallClean => {
                let seed = derive_seed(config.master_seed, &[roles::SMALL_CLEAN, trial as u64]);
                let kept = small_clean(&cal, config.budget, seed, oracle_labels.as_slice())?;
                let discarded = config.budget as u64 - kept.len() as u64;
                (kept, discarded, 0)
            }
            Method::LabelTrim => {
                let outcome = label_trim(&cal, config.budget, oracle_labels.as_slice());
                lt_surviving_outliers =
                    Some(outcome.trimmed.outlier_count().unwrap_or(0) as u64);
                lt_outlier_scores = outcome
                    .trimmed
                    .indices_with_label(1)
                    .iter()
                    .map(|&i| outcome.trimmed.scores()[i])
                    .collect();
                let removed = outcome.removed_indices.len() as u64;
                (outcome.trimmed, removed, 0)
            }
        };

        let mut sorted_ref = reference.scores().to_vec();
        sorted_ref.sort_unstable_by(f64::total_cmp);
        let p_in: Vec<PValue> = tin_scores
            .iter()
            .map(|&t| conformal::p_value_sorted(&sorted_ref, t))
            .collect::<Result<_>>()?;
        let p_out: Vec<PValue> = tout_scores
            .iter()
            .map(|&t| conformal::p_value_sorted(&sorted_ref, t))
            .collect::<Result<_>>()?;

        // outlier scores inside the method's own reference set, for the
        // bound CDFs
        let cal_outlier_scores: Vec<f64> = cal
            .indices_with_label(1)
            .iter()
            .map(|&i| cal.scores()[i])
            .collect();

        for &alpha in &config.alphas {
            let t1 = (!p_in.is_empty())
                .then(|| type_i_error(&p_in, alpha))
                .transpose()?;
            let pw = (!p_out.is_empty())
                .then(|| power(&p_out, alpha))
                .transpose()?;
            let (bound_cdf, lt_bracket) = match method {
                Method::Standard => {
                    let q = quantile_threshold(&cal, alpha)?;
                    (Some(empirical_cdf(&cal_outlier_scores, q.value)), None)
                }
                Method::LabelTrim => {
                    let q = quantile_threshold(&reference, alpha)?;
                    let cdf = empirical_cdf(&lt_outlier_scores, q.value);
                    let n1_lt = lt_surviving_outliers.unwrap_or(0) as f64;
                    let bracket = n1_lt / (n0 as f64 + 1.0) * ((1.0 - alpha) - cdf);
                    (Some(cdf), Some(bracket))
                }
                _ => (None, None),
            };
            rows.push(TrialRow {
                method,
                alpha,
                type_i_error: t1,
                power: pw,
                trimmed_outliers,
                trimmed_inliers,
                bound_cdf,
                lt_outlier_count: lt_surviving_outliers,
                lt_bracket,
            });
        }
    }

    Ok(TrialMetrics {
        trial,
        score_digest,
        rows,
    })
}

/// Runs all trials (in parallel when a rayon pool is available) and
/// aggregates mean and standard error per method and alpha. Aggregation
/// reduces in trial order, so serial and parallel runs match exactly.
pub fn run_monte_carlo(config: &ExperimentConfig) -> Result<AggregateMetrics> {
    run_monte_carlo_with_progress(config, |_| {})
}

/// Like [`run_monte_carlo`], invoking `progress` with each trial index as it
/// completes (completion order is nondeterministic under parallelism; the
/// results are not).
pub fn run_monte_carlo_with_progress(
    config: &ExperimentConfig,
    progress: impl Fn(usize) + Sync,
) -> Result<AggregateMetrics> {
    config.validate()?;
    let ctx = TrialContext::build(config)?;
    let outcomes: Vec<Result<TrialMetrics>> = (0..config.trials)
        .into_par_iter()
        .map(|trial| {
            let outcome = run_trial_in(&ctx, config, trial);
            progress(trial);
            outcome
        })
        .collect();
    let mut trials = Vec::with_capacity(outcomes.len());
    for (index, outcome) in outcomes.into_iter().enumerate() {
        match outcome {
            Ok(m) => trials.push(m),
            Err(e) => {
                return Err(Error::Trial {
                    index,
                    source: Box::new(e),
                })
            }
        }
    }
    Ok(aggregate(&trials))
}

/// Like [`run_monte_carlo`] but on a dedicated pool with the given worker
/// count; results are invariant to the count.
pub fn run_monte_carlo_with_workers(
    config: &ExperimentConfig,
    workers: usize,
) -> Result<AggregateMetrics> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::invalid(format!("cannot build thread pool: {e}")))?;
    pool.install(|| run_monte_carlo(config))
}

fn aggregate(trials: &[TrialMetrics]) -> AggregateMetrics {
    let rows_per_trial = trials.first().map_or(0, |t| t.rows.len());
    let mut rows = Vec::with_capacity(rows_per_trial);
    for i in 0..rows_per_trial {
        let cells: Vec<&TrialRow> = trials.iter().map(|t| &t.rows[i]).collect();
        let first = cells[0];
        debug_assert!(cells
            .iter()
            .all(|c| c.method == first.method && c.alpha == first.alpha));
        let gather = |f: &dyn Fn(&TrialRow) -> Option<f64>| -> Option<MeanSe> {
            let xs: Option<Vec<f64>> = cells.iter().map(|c| f(c)).collect();
            xs.map(|xs| MeanSe::from_samples(&xs))
        };
        rows.push(AggregateRow {
            method: first.method,
            alpha: first.alpha,
            type_i_error: gather(&|c| c.type_i_error),
            power: gather(&|c| c.power),
            trimmed_outliers: MeanSe::from_samples(
                &cells.iter().map(|c| c.trimmed_outliers as f64).collect::<Vec<_>>(),
            ),
            trimmed_inliers: MeanSe::from_samples(
                &cells.iter().map(|c| c.trimmed_inliers as f64).collect::<Vec<_>>(),
            ),
            bound_cdf: gather(&|c| c.bound_cdf),
            lt_outlier_count: gather(&|c| c.lt_outlier_count.map(|v| v as f64)),
            lt_bracket: gather(&|c| c.lt_bracket),
        });
    }
    AggregateMetrics {
        trials: trials.len(),
        rows,
    }
}

/// Runs one experiment per axis value, each with an independent trial seed
/// stream keyed by `(axis, value)`.
pub fn sweep(
    template: &ExperimentConfig,
    axis: SweepAxis,
    values: &[f64],
) -> Result<SweepResult> {
    if values.is_empty() {
        return Err(Error::invalid("sweep values must be nonempty"));
    }
    let mut points = Vec::with_capacity(values.len());
    for &value in values {
        let mut config = template.clone();
        match axis {
            SweepAxis::ContaminationRate => {
                if !(value.is_finite() && (0.0..1.0).contains(&value)) {
                    return Err(Error::invalid(format!(
                        "contamination rate {value} outside [0, 1)"
                    )));
                }
                config.split.contamination_rate = value;
            }
            SweepAxis::Budget => {
                if !(value.is_finite() && value >= 0.0 && value.fract() == 0.0) {
                    return Err(Error::invalid(format!(
                        "budget {value} must be a nonnegative integer"
                    )));
                }
                config.budget = value as usize;
            }
            SweepAxis::Alpha => {
                conformal::check_alpha(value)?;
                config.alphas = vec![value];
            }
        }
        let axis_tag = match axis {
            SweepAxis::ContaminationRate => 1,
            SweepAxis::Budget => 2,
            SweepAxis::Alpha => 3,
        };
        config.master_seed =
            derive_seed(template.master_seed, &[roles::SWEEP, axis_tag, value.to_bits()]);
        let metrics = run_monte_carlo(&config)?;
        points.push(SweepPoint { value, metrics });
    }
    Ok(SweepResult { axis, points })
}
