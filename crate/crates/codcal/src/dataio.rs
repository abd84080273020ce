//! Synthetic data generation, CSV ingestion, dataset splitting, and
//! contamination injection.
//!
//! Splitting draws four pairwise-disjoint index sets (train, calibration,
//! test inliers, test outliers) from an inlier pool and an outlier pool.
//! Contaminated sets receive `round(rate * size)` outliers. The injection
//! strategy controls which outliers are eligible: drawn uniformly (`iid`),
//! restricted to those scoring at or below a pool-score percentile
//! (`percentile`), or drawn from different percentile bands for the
//! train/calibration sets and the test set (`drift`).

use std::io::Read;
use std::path::Path;

use rand::seq::index::sample;
use rand_distr::Distribution;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::{self, derive_seed, roles};
use crate::scoring::{FeatureVector, Scorer};

/// A set of feature vectors with 0/1 labels (0 = inlier, 1 = outlier).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LabeledDataset {
    pub points: Vec<FeatureVector>,
    pub labels: Vec<u8>,
    pub name: String,
}

impl LabeledDataset {
    pub fn new(points: Vec<FeatureVector>, labels: Vec<u8>, name: impl Into<String>) -> Result<Self> {
        if points.len() != labels.len() {
            return Err(Error::invalid(format!(
                "{} labels for {} points",
                labels.len(),
                points.len()
            )));
        }
        if labels.iter().any(|&l| l > 1) {
            return Err(Error::invalid("labels must be 0 or 1"));
        }
        let d = points.first().map_or(0, Vec::len);
        for (i, p) in points.iter().enumerate() {
            if p.len() != d {
                return Err(Error::invalid(format!(
                    "point {i} has dimension {}, expected {d}",
                    p.len()
                )));
            }
            if p.iter().any(|v| !v.is_finite()) {
                return Err(Error::invalid(format!("point {i} has a non-finite entry")));
            }
        }
        Ok(Self {
            points,
            labels,
            name: name.into(),
        })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Feature dimension; `None` for an empty dataset.
    pub fn dim(&self) -> Option<usize> {
        self.points.first().map(Vec::len)
    }

    /// Rows at the given indices, preserving their order.
    pub fn subset(&self, indices: &[usize], name: impl Into<String>) -> LabeledDataset {
        LabeledDataset {
            points: indices.iter().map(|&i| self.points[i].clone()).collect(),
            labels: indices.iter().map(|&i| self.labels[i]).collect(),
            name: name.into(),
        }
    }

    fn append(&mut self, other: &LabeledDataset) {
        self.points.extend(other.points.iter().cloned());
        self.labels.extend(other.labels.iter().copied());
    }
}

/// Which outliers are eligible for injection into each split.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum InjectionStrategy {
    /// Outliers drawn uniformly from the pool.
    Iid,
    /// Only outliers scoring at or below the `q`-quantile of the pool's
    /// scores are eligible (everywhere), `q` in `(0, 1]`.
    Percentile { q: f64 },
    /// Train/calibration outliers come from one score-percentile band and
    /// test outliers from another.
    Drift {
        train_cal: PercentileBand,
        test: PercentileBand,
    },
}

/// Half-open percentile band `(lo, hi]` over pool scores, `0 <= lo < hi <= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PercentileBand {
    pub lo: f64,
    pub hi: f64,
}

impl InjectionStrategy {
    /// Whether eligibility requires ranking the outlier pool with a scorer.
    pub fn needs_scorer(&self) -> bool {
        !matches!(self, InjectionStrategy::Iid)
    }

    pub(crate) fn validate(&self) -> Result<()> {
        match self {
            InjectionStrategy::Iid => Ok(()),
            InjectionStrategy::Percentile { q } => {
                if !(q.is_finite() && 0.0 < *q && *q <= 1.0) {
                    return Err(Error::invalid(format!(
                        "percentile threshold {q} outside (0, 1]"
                    )));
                }
                Ok(())
            }
            InjectionStrategy::Drift { train_cal, test } => {
                for band in [train_cal, test] {
                    if !(band.lo.is_finite()
                        && band.hi.is_finite()
                        && 0.0 <= band.lo
                        && band.lo < band.hi
                        && band.hi <= 1.0)
                    {
                        return Err(Error::invalid(format!(
                            "percentile band ({}, {}] invalid",
                            band.lo, band.hi
                        )));
                    }
                }
                Ok(())
            }
        }
    }
}

/// Sizes, contamination rate, injection strategy, and seed for one split.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SplitSpec {
    pub train_size: usize,
    pub cal_size: usize,
    pub test_inlier_size: usize,
    pub test_outlier_size: usize,
    /// Fraction of outliers in train and calibration sets, in `[0, 1)`.
    pub contamination_rate: f64,
    #[serde(default = "default_injection")]
    pub injection: InjectionStrategy,
    #[serde(default)]
    pub seed: u64,
}

fn default_injection() -> InjectionStrategy {
    InjectionStrategy::Iid
}

impl SplitSpec {
    pub(crate) fn validate(&self) -> Result<()> {
        if !(self.contamination_rate.is_finite()
            && (0.0..1.0).contains(&self.contamination_rate))
        {
            return Err(Error::invalid(format!(
                "contamination rate {} outside [0, 1)",
                self.contamination_rate
            )));
        }
        self.injection.validate()
    }

    /// Outlier count for a contaminated set of the given size: half-up
    /// rounding keeps sweeps over the rate monotone in expectation.
    pub fn outlier_count(&self, size: usize) -> usize {
        (self.contamination_rate * size as f64).round() as usize
    }
}

/// The four disjoint splits. Calibration labels are retained so experiments
/// can simulate annotation; the calibration pipeline itself must treat them
/// as hidden.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Splits {
    pub train: LabeledDataset,
    pub cal: LabeledDataset,
    pub test_inlier: LabeledDataset,
    pub test_outlier: LabeledDataset,
}

/// Samples inliers from a standard Gaussian and outliers from a shifted,
/// scaled Gaussian: inliers `N(0, I_d)`, outliers `N(shift * 1_d, scale^2 I_d)`.
/// Inliers come first; deterministic given the seed. Requires `d >= 1` and
/// `scale > 0`.
pub fn gen_gaussian_mixture(
    n_inlier: usize,
    n_outlier: usize,
    d: usize,
    shift: f64,
    scale: f64,
    seed: u64,
) -> LabeledDataset {
    assert!(d >= 1, "dimension must be >= 1");
    assert!(scale > 0.0, "scale must be positive");
    let mut rng = rng::stream(seed);
    let mut normal = || -> f64 { rand_distr::StandardNormal.sample(&mut rng) };
    let mut points = Vec::with_capacity(n_inlier + n_outlier);
    for _ in 0..n_inlier {
        points.push((0..d).map(|_| normal()).collect());
    }
    for _ in 0..n_outlier {
        points.push((0..d).map(|_| shift + scale * normal()).collect());
    }
    let mut labels = vec![0u8; n_inlier];
    labels.extend(std::iter::repeat_n(1u8, n_outlier));
    LabeledDataset {
        points,
        labels,
        name: "gaussian-mixture".into(),
    }
}

/// Loads a CSV dataset: UTF-8, comma-separated, first row header, a 0/1
/// label column, all other columns finite decimals. Row order is preserved
/// and features keep header order.
pub fn load_csv_dataset(path: &Path, label_column: &str) -> Result<LabeledDataset> {
    let file = std::fs::File::open(path)?;
    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    read_csv_dataset(file, label_column, name)
}

/// CSV ingestion from any reader; see [`load_csv_dataset`].
pub fn read_csv_dataset(
    reader: impl Read,
    label_column: &str,
    name: impl Into<String>,
) -> Result<LabeledDataset> {
    let mut csv = csv::ReaderBuilder::new()
        .has_headers(true)
        .quoting(false)
        .from_reader(reader);
    let headers = csv
        .headers()
        .map_err(|e| Error::invalid(format!("cannot read CSV header: {e}")))?
        .clone();
    let label_idx = headers
        .iter()
        .position(|h| h == label_column)
        .ok_or_else(|| Error::invalid(format!("label column {label_column:?} not found")))?;
    let feature_names: Vec<String> = headers
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != label_idx)
        .map(|(_, h)| h.to_string())
        .collect();

    let mut points = Vec::new();
    let mut labels = Vec::new();
    for (row_idx, record) in csv.records().enumerate() {
        let row = row_idx + 1;
        let record = record.map_err(|e| Error::Parse {
            row,
            column: "-".into(),
            message: e.to_string(),
        })?;
        if record.len() != headers.len() {
            return Err(Error::Parse {
                row,
                column: "-".into(),
                message: format!("expected {} fields, found {}", headers.len(), record.len()),
            });
        }
        let mut features = Vec::with_capacity(feature_names.len());
        for (col, field) in record.iter().enumerate() {
            if col == label_idx {
                match field.trim() {
                    "0" => labels.push(0),
                    "1" => labels.push(1),
                    other => {
                        return Err(Error::Parse {
                            row,
                            column: label_column.into(),
                            message: format!("label must be 0 or 1, got {other:?}"),
                        })
                    }
                }
            } else {
                let value: f64 = field.trim().parse().map_err(|_| Error::Parse {
                    row,
                    column: headers[col].to_string(),
                    message: format!("not a number: {field:?}"),
                })?;
                if !value.is_finite() {
                    return Err(Error::Parse {
                        row,
                        column: headers[col].to_string(),
                        message: format!("non-finite value {value}"),
                    });
                }
                features.push(value);
            }
        }
        points.push(features);
    }
    LabeledDataset::new(points, labels, name)
}

/// Reads a CSV of numeric feature columns only (no label column): UTF-8,
/// comma-separated, first row header.
pub fn read_csv_points(reader: impl Read) -> Result<Vec<FeatureVector>> {
    let mut csv = csv::ReaderBuilder::new()
        .has_headers(true)
        .quoting(false)
        .from_reader(reader);
    let headers = csv
        .headers()
        .map_err(|e| Error::invalid(format!("cannot read CSV header: {e}")))?
        .clone();
    let mut points = Vec::new();
    for (row_idx, record) in csv.records().enumerate() {
        let row = row_idx + 1;
        let record = record.map_err(|e| Error::Parse {
            row,
            column: "-".into(),
            message: e.to_string(),
        })?;
        let mut features = Vec::with_capacity(headers.len());
        for (col, field) in record.iter().enumerate() {
            let value: f64 = field.trim().parse().map_err(|_| Error::Parse {
                row,
                column: headers.get(col).unwrap_or("-").to_string(),
                message: format!("not a number: {field:?}"),
            })?;
            if !value.is_finite() {
                return Err(Error::Parse {
                    row,
                    column: headers.get(col).unwrap_or("-").to_string(),
                    message: format!("non-finite value {value}"),
                });
            }
            features.push(value);
        }
        points.push(features);
    }
    Ok(points)
}

/// Serializes a dataset to CSV with feature columns `x0..x{d-1}` followed by
/// the label column.
pub fn dataset_to_csv(ds: &LabeledDataset, label_column: &str) -> String {
    let d = ds.dim().unwrap_or(0);
    let mut out = String::new();
    for j in 0..d {
        out.push_str(&format!("x{j},"));
    }
    out.push_str(label_column);
    out.push('\n');
    for (point, label) in ds.points.iter().zip(&ds.labels) {
        for v in point {
            out.push_str(&format!("{v},"));
        }
        out.push_str(&format!("{label}\n"));
    }
    out
}

/// Lower empirical `q`-quantile: the `ceil(q * n)`-th smallest score,
/// `q` in `(0, 1]`. Returns `-inf` for `q = 0` so bands can be half-open.
fn lower_quantile(sorted: &[f64], q: f64) -> f64 {
    if q <= 0.0 || sorted.is_empty() {
        return f64::NEG_INFINITY;
    }
    let idx = crate::conformal::ceil_scaled(q, sorted.len() as u64) as usize;
    sorted[idx.max(1) - 1]
}

/// Draws the requested disjoint splits from the pools.
///
/// Percentile and drift strategies require `scorer` to rank the outlier
/// pool. Each role draws from its own random sub-stream derived from
/// `spec.seed`, so adding a role never perturbs another role's draws.
pub fn make_splits(
    inlier_pool: &LabeledDataset,
    outlier_pool: &LabeledDataset,
    spec: &SplitSpec,
    scorer: Option<&Scorer>,
) -> Result<Splits> {
    spec.validate()?;
    if inlier_pool.labels.iter().any(|&l| l != 0) {
        return Err(Error::invalid("inlier pool contains outlier labels"));
    }
    if outlier_pool.labels.iter().any(|&l| l != 1) {
        return Err(Error::invalid("outlier pool contains inlier labels"));
    }

    let train_out = spec.outlier_count(spec.train_size);
    let cal_out = spec.outlier_count(spec.cal_size);
    let train_in = spec.train_size - train_out;
    let cal_in = spec.cal_size - cal_out;

    let inlier_need = train_in + cal_in + spec.test_inlier_size;
    if inlier_need > inlier_pool.len() {
        return Err(Error::invalid(format!(
            "inlier pool has {} points but the splits need {inlier_need}",
            inlier_pool.len()
        )));
    }

    // Eligibility over the outlier pool per split role.
    let outlier_need = train_out + cal_out + spec.test_outlier_size;
    let (contaminated_ok, test_ok): (Vec<bool>, Vec<bool>) = match &spec.injection {
        InjectionStrategy::Iid => {
            let all = vec![true; outlier_pool.len()];
            (all.clone(), all)
        }
        strategy => {
            if outlier_need == 0 {
                let all = vec![true; outlier_pool.len()];
                (all.clone(), all)
            } else {
                let scorer = scorer.ok_or_else(|| {
                    Error::invalid("percentile/drift injection requires a scorer")
                })?;
                let scores = scorer.score_batch(&outlier_pool.points)?;
                let mut sorted = scores.clone();
                sorted.sort_unstable_by(f64::total_cmp);
                let band_mask = |band: &PercentileBand| -> Vec<bool> {
                    let lo = lower_quantile(&sorted, band.lo);
                    let hi = lower_quantile(&sorted, band.hi);
                    scores.iter().map(|&s| s > lo && s <= hi).collect()
                };
                match strategy {
                    InjectionStrategy::Percentile { q } => {
                        let mask = band_mask(&PercentileBand { lo: 0.0, hi: *q });
                        (mask.clone(), mask)
                    }
                    InjectionStrategy::Drift { train_cal, test } => {
                        (band_mask(train_cal), band_mask(test))
                    }
                    InjectionStrategy::Iid => unreachable!(),
                }
            }
        }
    };

    let mut inlier_avail: Vec<usize> = (0..inlier_pool.len()).collect();
    let mut draw_inliers = |role: u64, count: usize| -> Vec<usize> {
        draw_from(&mut inlier_avail, |_| true, count, derive_seed(spec.seed, &[role]))
            .expect("inlier feasibility checked above")
    };
    let train_in_idx = draw_inliers(roles::TRAIN_INLIER, train_in);
    let cal_in_idx = draw_inliers(roles::CAL_INLIER, cal_in);
    let test_in_idx = draw_inliers(roles::TEST_INLIER, spec.test_inlier_size);

    let mut outlier_avail: Vec<usize> = (0..outlier_pool.len()).collect();
    let mut draw_outliers = |role: u64, count: usize, mask: &[bool]| -> Result<Vec<usize>> {
        draw_from(&mut outlier_avail, |i| mask[i], count, derive_seed(spec.seed, &[role]))
            .ok_or_else(|| {
                Error::invalid(format!(
                    "outlier pool has too few eligible points for the requested splits \
                     (need {count} more)"
                ))
            })
    };
    let train_out_idx = draw_outliers(roles::TRAIN_OUTLIER, train_out, &contaminated_ok)?;
    let cal_out_idx = draw_outliers(roles::CAL_OUTLIER, cal_out, &contaminated_ok)?;
    let test_out_idx = draw_outliers(roles::TEST_OUTLIER, spec.test_outlier_size, &test_ok)?;

    let mut train = inlier_pool.subset(&train_in_idx, "train");
    train.append(&outlier_pool.subset(&train_out_idx, ""));
    let mut cal = inlier_pool.subset(&cal_in_idx, "cal");
    cal.append(&outlier_pool.subset(&cal_out_idx, ""));

    Ok(Splits {
        train,
        cal,
        test_inlier: inlier_pool.subset(&test_in_idx, "test-inlier"),
        test_outlier: outlier_pool.subset(&test_out_idx, "test-outlier"),
    })
}

/// Draws `count` pool ids uniformly without replacement from the eligible
/// members of `avail`, removing them from `avail`. `None` when too few are
/// eligible.
fn draw_from(
    avail: &mut Vec<usize>,
    eligible: impl Fn(usize) -> bool,
    count: usize,
    seed: u64,
) -> Option<Vec<usize>> {
    let candidates: Vec<usize> = avail.iter().copied().filter(|&i| eligible(i)).collect();
    if candidates.len() < count {
        return None;
    }
    let mut rng = rng::stream(seed);
    let mut picked: Vec<usize> = sample(&mut rng, candidates.len(), count)
        .into_iter()
        .map(|p| candidates[p])
        .collect();
    picked.sort_unstable();
    let drop: std::collections::HashSet<usize> = picked.iter().copied().collect();
    avail.retain(|i| !drop.contains(i));
    Some(picked)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scoring::fit_knn_scorer;

    fn spec(train: usize, cal: usize, tin: usize, tout: usize, r: f64, seed: u64) -> SplitSpec {
        SplitSpec {
            train_size: train,
            cal_size: cal,
            test_inlier_size: tin,
            test_outlier_size: tout,
            contamination_rate: r,
            injection: InjectionStrategy::Iid,
            seed,
        }
    }

    fn pools(n_in: usize, n_out: usize, seed: u64) -> (LabeledDataset, LabeledDataset) {
        (
            gen_gaussian_mixture(n_in, 0, 2, 3.0, 1.0, seed),
            gen_gaussian_mixture(0, n_out, 2, 3.0, 1.0, seed ^ 1),
        )
    }

    #[test]
    fn gaussian_mixture_labels_and_determinism() {
        let ds = gen_gaussian_mixture(5, 3, 2, 3.0, 1.5, 9);
        assert_eq!(ds.len(), 8);
        assert_eq!(ds.labels[..5], [0, 0, 0, 0, 0]);
        assert_eq!(ds.labels[5..], [1, 1, 1]);
        assert_eq!(ds, gen_gaussian_mixture(5, 3, 2, 3.0, 1.5, 9));
        let all_in = gen_gaussian_mixture(4, 0, 1, 0.0, 1.0, 9);
        assert!(all_in.labels.iter().all(|&l| l == 0));
    }

    #[test]
    fn gaussian_outlier_block_mean_near_shift() {
        let n = 400;
        let ds = gen_gaussian_mixture(0, n, 2, 3.0, 1.0, 1234);
        for coord in 0..2 {
            let mean: f64 =
                ds.points.iter().map(|p| p[coord]).sum::<f64>() / n as f64;
            assert!(
                (mean - 3.0).abs() < 4.0 / (n as f64).sqrt(),
                "coordinate {coord} mean {mean}"
            );
        }
        // shift 0, scale 1: the outlier block is drawn from the inlier law
        let same = gen_gaussian_mixture(0, n, 2, 0.0, 1.0, 1234);
        for coord in 0..2 {
            let mean: f64 =
                same.points.iter().map(|p| p[coord]).sum::<f64>() / n as f64;
            assert!(mean.abs() < 4.0 / (n as f64).sqrt());
        }
    }

    #[test]
    fn csv_round_trip_and_errors() {
        let ds = LabeledDataset::new(
            vec![vec![1.5, -2.0], vec![0.25, 3.0], vec![0.0, 0.125]],
            vec![0, 1, 0],
            "t",
        )
        .unwrap();
        let text = dataset_to_csv(&ds, "label");
        let back = read_csv_dataset(text.as_bytes(), "label", "t").unwrap();
        assert_eq!(back.points, ds.points);
        assert_eq!(back.labels, ds.labels);

        let header_only = read_csv_dataset("a,label\n".as_bytes(), "label", "e").unwrap();
        assert!(header_only.is_empty());

        let bad_label = read_csv_dataset("a,label\n1.0,2\n".as_bytes(), "label", "e");
        match bad_label {
            Err(Error::Parse { row, .. }) => assert_eq!(row, 1),
            other => panic!("expected parse error, got {other:?}"),
        }

        let bad_cell = read_csv_dataset("a,label\n1.0,0\nx,1\n".as_bytes(), "label", "e");
        match bad_cell {
            Err(Error::Parse { row, column, .. }) => {
                assert_eq!(row, 2);
                assert_eq!(column, "a");
            }
            other => panic!("expected parse error, got {other:?}"),
        }

        assert!(read_csv_dataset("a,b\n1,2\n".as_bytes(), "label", "e").is_err());
        assert!(load_csv_dataset(Path::new("/nonexistent/x.csv"), "label").is_err());
    }

    #[test]
    fn splits_have_requested_contamination() {
        let (inliers, outliers) = pools(500, 60, 5);
        let s = spec(100, 100, 50, 20, 0.03, 42);
        let splits = make_splits(&inliers, &outliers, &s, None).unwrap();
        assert_eq!(splits.cal.len(), 100);
        assert_eq!(splits.cal.labels.iter().filter(|&&l| l == 1).count(), 3);
        assert_eq!(splits.train.labels.iter().filter(|&&l| l == 1).count(), 3);
        assert_eq!(splits.test_inlier.len(), 50);
        assert!(splits.test_inlier.labels.iter().all(|&l| l == 0));
        assert_eq!(splits.test_outlier.len(), 20);
        assert!(splits.test_outlier.labels.iter().all(|&l| l == 1));
    }

    #[test]
    fn zero_rate_gives_clean_sets() {
        let (inliers, outliers) = pools(300, 10, 6);
        let s = spec(80, 80, 40, 5, 0.0, 7);
        let splits = make_splits(&inliers, &outliers, &s, None).unwrap();
        assert!(splits.cal.labels.iter().all(|&l| l == 0));
        assert!(splits.train.labels.iter().all(|&l| l == 0));
    }

    #[test]
    fn splits_are_reproducible_and_disjoint() {
        let (inliers, outliers) = pools(400, 80, 8);
        let s = spec(120, 90, 60, 30, 0.05, 99);
        let a = make_splits(&inliers, &outliers, &s, None).unwrap();
        let b = make_splits(&inliers, &outliers, &s, None).unwrap();
        assert_eq!(a.cal, b.cal);
        assert_eq!(a.train, b.train);
        assert_eq!(a.test_inlier, b.test_inlier);
        assert_eq!(a.test_outlier, b.test_outlier);

        // disjointness: every drawn point appears once across the splits
        let mut seen = std::collections::HashSet::new();
        for ds in [&a.train, &a.cal, &a.test_inlier, &a.test_outlier] {
            for (p, l) in ds.points.iter().zip(&ds.labels) {
                let key = (format!("{p:?}"), *l);
                assert!(seen.insert(key), "duplicate point across splits");
            }
        }
    }

    #[test]
    fn infeasible_sizes_name_the_pool() {
        let (inliers, outliers) = pools(50, 5, 3);
        let err = make_splits(&inliers, &outliers, &spec(40, 40, 10, 0, 0.0, 1), None)
            .unwrap_err();
        assert!(err.to_string().contains("inlier pool"));
        let err = make_splits(&inliers, &outliers, &spec(10, 10, 5, 30, 0.0, 1), None)
            .unwrap_err();
        assert!(err.to_string().contains("outlier pool"));
    }

    #[test]
    fn percentile_eligibility_hand_quantile() {
        // pool of 4 outliers at distances 1, 2, 3, 4 from the single
        // reference point: q = 0.5 -> eligible scores are {1, 2}
        let reference = LabeledDataset::new(vec![vec![0.0]], vec![0], "ref").unwrap();
        let scorer = fit_knn_scorer(&reference.points, 1).unwrap();
        let outliers = LabeledDataset::new(
            vec![vec![1.0], vec![2.0], vec![3.0], vec![4.0]],
            vec![1; 4],
            "out",
        )
        .unwrap();
        let inliers = LabeledDataset::new(vec![vec![0.0]; 40], vec![0; 40], "in").unwrap();
        let mut s = spec(10, 10, 5, 2, 0.0, 21);
        s.injection = InjectionStrategy::Percentile { q: 0.5 };
        let splits = make_splits(&inliers, &outliers, &s, Some(&scorer)).unwrap();
        for p in &splits.test_outlier.points {
            assert!(p[0] <= 2.0, "ineligible outlier {p:?} drawn");
        }
        // drawing 3 from the 2 eligible must fail and name the pool
        s.test_outlier_size = 3;
        let err = make_splits(&inliers, &outliers, &s, Some(&scorer)).unwrap_err();
        assert!(err.to_string().contains("eligible"));
        // strategies that rank the pool require a scorer
        assert!(make_splits(&inliers, &outliers, &s, None).is_err());
    }

    #[test]
    fn percentile_one_matches_iid_eligibility() {
        let scorer = fit_knn_scorer(&[vec![0.0, 0.0]], 1).unwrap();
        let (inliers, outliers) = pools(200, 40, 15);
        let mut s = spec(60, 60, 30, 10, 0.05, 33);
        let iid = make_splits(&inliers, &outliers, &s, None).unwrap();
        s.injection = InjectionStrategy::Percentile { q: 1.0 };
        let p1 = make_splits(&inliers, &outliers, &s, Some(&scorer)).unwrap();
        assert_eq!(iid.cal, p1.cal);
        assert_eq!(iid.test_outlier, p1.test_outlier);
    }

    #[test]
    fn drift_bands_separate_roles() {
        let reference = LabeledDataset::new(vec![vec![0.0]], vec![0], "ref").unwrap();
        let scorer = fit_knn_scorer(&reference.points, 1).unwrap();
        let outliers = LabeledDataset::new(
            (1..=20).map(|i| vec![i as f64]).collect(),
            vec![1; 20],
            "out",
        )
        .unwrap();
        let inliers = LabeledDataset::new(vec![vec![0.0]; 80], vec![0; 80], "in").unwrap();
        let mut s = spec(20, 20, 10, 5, 0.1, 4);
        s.injection = InjectionStrategy::Drift {
            train_cal: PercentileBand { lo: 0.5, hi: 1.0 },
            test: PercentileBand { lo: 0.0, hi: 0.5 },
        };
        let splits = make_splits(&inliers, &outliers, &s, Some(&scorer)).unwrap();
        for (p, l) in splits.cal.points.iter().zip(&splits.cal.labels) {
            if *l == 1 {
                assert!(p[0] > 10.0, "train/cal outlier {p:?} outside its band");
            }
        }
        for p in &splits.test_outlier.points {
            assert!(p[0] <= 10.0, "test outlier {p:?} outside its band");
        }
    }

    #[test]
    fn spec_validation() {
        let mut s = spec(1, 1, 1, 0, 1.0, 0);
        assert!(s.validate().is_err());
        s.contamination_rate = 0.5;
        assert!(s.validate().is_ok());
        s.injection = InjectionStrategy::Percentile { q: 0.0 };
        assert!(s.validate().is_err());
        s.injection = InjectionStrategy::Drift {
            train_cal: PercentileBand { lo: 0.6, hi: 0.5 },
            test: PercentileBand { lo: 0.0, hi: 1.0 },
        };
        assert!(s.validate().is_err());
    }

    #[test]
    fn outlier_count_rounds_half_up() {
        let s = spec(0, 0, 0, 0, 0.025, 0);
        assert_eq!(s.outlier_count(100), 3); // 2.5 rounds up
        assert_eq!(s.outlier_count(40), 1);
        let s = spec(0, 0, 0, 0, 0.03, 0);
        assert_eq!(s.outlier_count(100), 3);
    }
}
