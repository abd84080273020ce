//! `codcal pvalue`: score test points against a calibration CSV and report
//! conformal p-values (exact fraction and 12-significant-digit decimal) with
//! rejection flags at the requested level.
//!
//! Scores come from a scorer fitted on `--train` features, or, when no
//! training file is given, directly from single-column data (the feature is
//! the score).

use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};

use codcal::conformal::{conformal_p_value, default_jitter_epsilon, jitter_scores, PValue, ScoreSet};
use codcal::dataio::{read_csv_dataset, read_csv_points};
use codcal::rng::derive_seed;
use codcal::scoring::{fit_knn_scorer, fit_mahalanobis_scorer, Scorer};
use codcal::trimming::{label_trim, naive_trim, small_clean};

use crate::util::{as_usage, format_sig, write_atomic, CliError, CliResult};

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Standard,
    LabelTrim,
    NaiveTrim,
    SmallClean,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ScorerArg {
    Knn,
    Mahalanobis,
}

#[derive(Args)]
pub struct PvalueArgs {
    /// Calibration CSV (label column required for label-trim/small-clean).
    #[arg(long)]
    cal: PathBuf,

    /// Test CSV; its label column, if any, is ignored.
    #[arg(long)]
    test: PathBuf,

    #[arg(long, value_enum)]
    method: MethodArg,

    /// Labeling budget (label-trim/small-clean) or removal count (naive-trim).
    #[arg(long, default_value_t = 0)]
    m: usize,

    /// Rejection level in (0, 1).
    #[arg(long)]
    alpha: f64,

    /// Name of the 0/1 label column.
    #[arg(long, default_value = "label")]
    label_column: String,

    /// Training CSV for the scorer; without it, single-column data is
    /// treated as raw scores.
    #[arg(long)]
    train: Option<PathBuf>,

    /// Scorer fitted on --train.
    #[arg(long, value_enum, default_value_t = ScorerArg::Knn)]
    scorer: ScorerArg,

    /// Neighbor count for the knn scorer.
    #[arg(long, default_value_t = 5)]
    k: usize,

    /// Covariance ridge for the mahalanobis scorer.
    #[arg(long, default_value_t = 0.0)]
    ridge: f64,

    /// Apply tie-breaking jitter jointly to calibration and test scores.
    #[arg(long)]
    jitter: bool,

    /// Output CSV path; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

type PointsAndLabels = (Vec<Vec<f64>>, Option<Vec<u8>>);

/// Feature rows plus labels when the header carries the label column.
fn load_flexible(path: &Path, label_column: &str) -> CliResult<PointsAndLabels> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::usage(format!("cannot read {}: {e}", path.display())))?;
    let header = text.lines().next().unwrap_or_default();
    let has_label = header.split(',').any(|h| h.trim() == label_column);
    if has_label {
        let ds = read_csv_dataset(text.as_bytes(), label_column, "cli").map_err(as_usage)?;
        Ok((ds.points, Some(ds.labels)))
    } else {
        let points = read_csv_points(text.as_bytes()).map_err(as_usage)?;
        Ok((points, None))
    }
}

fn fit(args: &PvalueArgs, train: &[Vec<f64>]) -> CliResult<Scorer> {
    match args.scorer {
        ScorerArg::Knn => fit_knn_scorer(train, args.k).map_err(as_usage),
        ScorerArg::Mahalanobis => fit_mahalanobis_scorer(train, args.ridge).map_err(as_usage),
    }
}

pub fn run(args: PvalueArgs, seed: Option<u64>) -> CliResult<()> {
    if !(args.alpha.is_finite() && 0.0 < args.alpha && args.alpha < 1.0) {
        return Err(CliError::usage(format!(
            "alpha {} outside (0, 1)",
            args.alpha
        )));
    }
    let seed = seed.unwrap_or(0);
    let (cal_points, cal_labels) = load_flexible(&args.cal, &args.label_column)?;
    let (test_points, _) = load_flexible(&args.test, &args.label_column)?;

    let (mut cal_scores, mut test_scores) = match &args.train {
        Some(train_path) => {
            let (train_points, _) = load_flexible(train_path, &args.label_column)?;
            let scorer = fit(&args, &train_points)?;
            (
                scorer.score_batch(&cal_points).map_err(as_usage)?,
                scorer.score_batch(&test_points).map_err(as_usage)?,
            )
        }
        None => {
            let width = cal_points.first().map_or(1, Vec::len);
            if width != 1 || test_points.iter().any(|p| p.len() != 1) {
                return Err(CliError::usage(
                    "multi-column data needs --train to fit a scorer; \
                     single-column data is treated as raw scores",
                ));
            }
            (
                cal_points.iter().map(|p| p[0]).collect(),
                test_points.iter().map(|p| p[0]).collect(),
            )
        }
    };

    if args.jitter {
        let mut joint = cal_scores.clone();
        joint.extend_from_slice(&test_scores);
        let eps = default_jitter_epsilon(&joint);
        let jittered = jitter_scores(&joint, eps, derive_seed(seed, &[0x6a69_7474]));
        let (a, b) = jittered.split_at(cal_scores.len());
        cal_scores = a.to_vec();
        test_scores = b.to_vec();
    }

    let needs_oracle = matches!(args.method, MethodArg::LabelTrim | MethodArg::SmallClean);
    let labels = match (&cal_labels, needs_oracle) {
        (Some(labels), _) => labels.clone(),
        (None, false) => vec![0; cal_scores.len()],
        (None, true) => {
            return Err(CliError::usage(format!(
                "method requires a {:?} column in the calibration CSV to act as the oracle",
                args.label_column
            )))
        }
    };

    let cal = ScoreSet::new(cal_scores).map_err(as_usage)?;
    let reference = match args.method {
        MethodArg::Standard => cal,
        MethodArg::NaiveTrim => naive_trim(&cal, args.m).map_err(as_usage)?,
        MethodArg::LabelTrim => label_trim(&cal, args.m, labels.as_slice()).trimmed,
        MethodArg::SmallClean => {
            small_clean(&cal, args.m, derive_seed(seed, &[0x7363]), labels.as_slice())
                .map_err(as_usage)?
        }
    };

    let mut out = String::from("index,score,p_fraction,p_value,reject\n");
    for (i, &t) in test_scores.iter().enumerate() {
        let p: PValue = conformal_p_value(&reference, t).map_err(as_usage)?;
        let rejected = p.is_at_most(args.alpha);
        out.push_str(&format!(
            "{i},{t},{p},{},{rejected}\n",
            format_sig(p.value(), 12)
        ));
    }

    match &args.out {
        Some(path) => write_atomic(path, &out),
        None => {
            print!("{out}");
            Ok(())
        }
    }
}
