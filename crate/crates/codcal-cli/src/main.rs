//! `codcal`: conformal outlier detection with contaminated calibration data.
//!
//! Subcommands: `simulate` runs the seeded Monte-Carlo comparison of
//! calibration methods from a JSON config; `pvalue` computes conformal
//! p-values and rejection flags on user CSVs; `bounds` evaluates the
//! closed-form type-I error bounds; `gen` writes a synthetic Gaussian
//! mixture dataset to CSV.
//!
//! Exit codes: 0 success, 1 runtime failure, 2 usage/config error. All
//! randomness flows from `--seed`, the `CODCAL_SEED` environment variable,
//! or the config seed; never from the clock.

mod bounds_cmd;
mod gen;
mod pvalue;
mod simulate;
mod util;

use clap::{Parser, Subcommand};
use std::process::ExitCode;

use util::CliResult;

#[derive(Parser)]
#[command(name = "codcal", version, about = "Conformal outlier detection with contaminated calibration data")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Seed for all randomness; falls back to $CODCAL_SEED, then the config
    /// seed (simulate) or 0.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Worker threads for trial execution; results are invariant to this.
    #[arg(long, global = true)]
    workers: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Run a Monte-Carlo experiment from a JSON config.
    Simulate(simulate::SimulateArgs),
    /// Compute conformal p-values for test points against a calibration CSV.
    Pvalue(pvalue::PvalueArgs),
    /// Evaluate a closed-form type-I error bound.
    Bounds(bounds_cmd::BoundsArgs),
    /// Generate a synthetic Gaussian-mixture dataset as CSV.
    Gen(gen::GenArgs),
}

/// `--seed` flag, then `CODCAL_SEED`, then `None` (caller-specific default).
fn resolve_seed(flag: Option<u64>) -> CliResult<Option<u64>> {
    if flag.is_some() {
        return Ok(flag);
    }
    match std::env::var("CODCAL_SEED") {
        Ok(raw) => raw
            .parse::<u64>()
            .map(Some)
            .map_err(|_| util::CliError::usage(format!("CODCAL_SEED is not a u64: {raw:?}"))),
        Err(_) => Ok(None),
    }
}

fn run(cli: Cli) -> CliResult<()> {
    let seed = resolve_seed(cli.seed)?;
    match cli.command {
        Command::Simulate(args) => simulate::run(args, seed, cli.workers),
        Command::Pvalue(args) => pvalue::run(args, seed),
        Command::Bounds(args) => bounds_cmd::run(args),
        Command::Gen(args) => gen::run(args, seed),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {}", err.message());
            ExitCode::from(err.exit_code())
        }
    }
}
