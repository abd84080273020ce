//! `codcal bounds`: evaluate the closed-form type-I error bounds with
//! 12 significant digits.

use clap::{Args, ValueEnum};

use codcal::bounds::{lemma_bound, mixture_bound, oracle_interval, theorem_lt_bound};

use crate::util::{format_sig, CliError, CliResult};

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BoundForm {
    /// Contaminated-calibration bound: needs --alpha, --n0, --n1, --cdf.
    Lemma,
    /// Label-Trim bound: needs --alpha, --n0, --lt-count, --cdf.
    Theorem,
    /// Mixture-model bound: needs --alpha, --delta, --f0-minus-f1.
    Mixture,
    /// Clean-calibration coverage interval: needs --alpha, --n.
    OracleInterval,
}

#[derive(Args)]
pub struct BoundsArgs {
    #[arg(long, value_enum)]
    form: BoundForm,

    /// Target type-I error level in (0, 1).
    #[arg(long)]
    alpha: f64,

    /// Inlier count in the calibration set.
    #[arg(long)]
    n0: Option<u64>,

    /// Outlier count in the calibration set.
    #[arg(long)]
    n1: Option<u64>,

    /// Estimate of the outlier-score CDF at the calibration quantile, in [0, 1].
    #[arg(long)]
    cdf: Option<f64>,

    /// Outliers surviving the trim (may be a trial mean).
    #[arg(long = "lt-count")]
    lt_count: Option<f64>,

    /// Population contamination proportion in [0, 1).
    #[arg(long)]
    delta: Option<f64>,

    /// Estimate of E[F0(Q) - F1(Q)], in [-1, 1].
    #[arg(long = "f0-minus-f1")]
    f0_minus_f1: Option<f64>,

    /// Calibration size for the coverage interval.
    #[arg(long)]
    n: Option<u64>,
}

fn require<T: Copy>(value: Option<T>, name: &str) -> CliResult<T> {
    value.ok_or_else(|| CliError::usage(format!("--{name} is required for this form")))
}

fn in_range(value: f64, lo: f64, hi: f64, name: &str) -> CliResult<f64> {
    if !(value.is_finite() && lo <= value && value <= hi) {
        return Err(CliError::usage(format!(
            "--{name} {value} outside [{lo}, {hi}]"
        )));
    }
    Ok(value)
}

pub fn run(args: BoundsArgs) -> CliResult<()> {
    if !(args.alpha.is_finite() && 0.0 < args.alpha && args.alpha < 1.0) {
        return Err(CliError::usage(format!(
            "alpha {} outside (0, 1)",
            args.alpha
        )));
    }
    match args.form {
        BoundForm::Lemma => {
            let n0 = require(args.n0, "n0")?;
            let n1 = require(args.n1, "n1")?;
            let cdf = in_range(require(args.cdf, "cdf")?, 0.0, 1.0, "cdf")?;
            println!("{}", format_sig(lemma_bound(args.alpha, n0, n1, cdf), 12));
        }
        BoundForm::Theorem => {
            let n0 = require(args.n0, "n0")?;
            let lt = require(args.lt_count, "lt-count")?;
            if !(lt.is_finite() && lt >= 0.0) {
                return Err(CliError::usage(format!("--lt-count {lt} must be >= 0")));
            }
            let cdf = in_range(require(args.cdf, "cdf")?, 0.0, 1.0, "cdf")?;
            println!(
                "{}",
                format_sig(theorem_lt_bound(args.alpha, n0, lt, cdf), 12)
            );
        }
        BoundForm::Mixture => {
            let delta = require(args.delta, "delta")?;
            if !(delta.is_finite() && (0.0..1.0).contains(&delta)) {
                return Err(CliError::usage(format!(
                    "--delta {delta} outside [0, 1)"
                )));
            }
            let diff = in_range(
                require(args.f0_minus_f1, "f0-minus-f1")?,
                -1.0,
                1.0,
                "f0-minus-f1",
            )?;
            println!("{}", format_sig(mixture_bound(args.alpha, delta, diff), 12));
        }
        BoundForm::OracleInterval => {
            let n = require(args.n, "n")?;
            if n == 0 {
                return Err(CliError::usage("--n must be >= 1"));
            }
            let (lo, hi) = oracle_interval(n, args.alpha);
            println!("{} {}", format_sig(lo, 12), format_sig(hi, 12));
        }
    }
    Ok(())
}
