//! `codcal gen`: write a synthetic Gaussian-mixture dataset to CSV.

use std::path::PathBuf;

use clap::Args;

use codcal::dataio::{dataset_to_csv, gen_gaussian_mixture};

use crate::util::{write_atomic, CliError, CliResult};

#[derive(Args)]
pub struct GenArgs {
    /// Output CSV path.
    #[arg(long)]
    out: PathBuf,

    #[arg(long = "n-inlier")]
    n_inlier: usize,

    #[arg(long = "n-outlier")]
    n_outlier: usize,

    /// Feature dimension.
    #[arg(long, default_value_t = 2)]
    dim: usize,

    /// Outlier mean shift per coordinate.
    #[arg(long, default_value_t = 3.0)]
    shift: f64,

    /// Outlier standard deviation.
    #[arg(long, default_value_t = 1.0)]
    scale: f64,

    /// Name of the 0/1 label column.
    #[arg(long, default_value = "label")]
    label_column: String,
}

pub fn run(args: GenArgs, seed: Option<u64>) -> CliResult<()> {
    if args.dim == 0 {
        return Err(CliError::usage("dim must be >= 1"));
    }
    if !(args.scale.is_finite() && args.scale > 0.0) {
        return Err(CliError::usage(format!(
            "scale {} must be positive",
            args.scale
        )));
    }
    if !args.shift.is_finite() {
        return Err(CliError::usage(format!("shift {} must be finite", args.shift)));
    }
    let ds = gen_gaussian_mixture(
        args.n_inlier,
        args.n_outlier,
        args.dim,
        args.shift,
        args.scale,
        seed.unwrap_or(0),
    );
    write_atomic(&args.out, &dataset_to_csv(&ds, &args.label_column))
}
