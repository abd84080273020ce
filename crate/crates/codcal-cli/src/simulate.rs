//! `codcal simulate`: load a JSON experiment config (with optional `--set`
//! overrides), run the Monte-Carlo harness, and write `results.csv`,
//! `results.json`, `config.json`, and `manifest.json` to the output
//! directory.

use std::path::PathBuf;

use chrono::{SecondsFormat, Utc};
use clap::Args;
use serde::Serialize;
use serde_json::Value;

use codcal::experiments::{
    run_monte_carlo_with_progress, sweep, ExperimentConfig,
};
use codcal::report::{results_csv, results_json, RunOutput};

use crate::util::{write_atomic, CliError, CliResult};

#[derive(Args)]
pub struct SimulateArgs {
    /// JSON experiment config.
    #[arg(long)]
    config: PathBuf,

    /// Output directory (created if missing).
    #[arg(long)]
    out: PathBuf,

    /// Config override `key=json-value`, repeatable; dotted keys reach
    /// nested fields (e.g. `--set split.cal_size=500`).
    #[arg(long = "set", value_name = "KEY=VALUE")]
    overrides: Vec<String>,
}

/// Run manifest written alongside the results.
#[derive(Serialize)]
struct RunManifest<'a> {
    config_hash: &'a str,
    master_seed: u64,
    tool_version: &'a str,
    started_at: String,
    finished_at: String,
    outputs: Vec<String>,
}

pub fn run(args: SimulateArgs, seed: Option<u64>, workers: Option<usize>) -> CliResult<()> {
    let started_at = now();
    let raw = std::fs::read_to_string(&args.config).map_err(|e| {
        CliError::usage(format!("cannot read config {}: {e}", args.config.display()))
    })?;
    let mut tree: Value = serde_json::from_str(&raw)
        .map_err(|e| CliError::usage(format!("config is not valid JSON: {e}")))?;
    for entry in &args.overrides {
        apply_override(&mut tree, entry)?;
    }

    let effective = tree.to_string();
    let deserializer = &mut serde_json::Deserializer::from_str(&effective);
    let mut config: ExperimentConfig = serde_path_to_error::deserialize(deserializer)
        .map_err(|e| CliError::usage(format!("config field {}: {}", e.path(), e.inner())))?;
    if let Some(seed) = seed {
        config.master_seed = seed;
    }
    config
        .validate()
        .map_err(|e| CliError::usage(format!("config: {e}")))?;

    std::fs::create_dir_all(&args.out)
        .map_err(|e| CliError::runtime(format!("cannot create {}: {e}", args.out.display())))?;

    let output = execute(&config, workers)?;

    // The effective config is written out so the hash stays recomputable
    // from a file.
    let config_json = serde_json::to_string_pretty(&config).expect("config serializes") + "\n";
    let hash = config.digest();
    let csv = results_csv(&hash, config.master_seed, &output);
    let json = results_json(&hash, config.master_seed, &output);

    write_atomic(&args.out.join("config.json"), &config_json)?;
    write_atomic(&args.out.join("results.csv"), &csv)?;
    write_atomic(&args.out.join("results.json"), &json)?;

    let manifest = RunManifest {
        config_hash: &hash,
        master_seed: config.master_seed,
        tool_version: env!("CARGO_PKG_VERSION"),
        started_at,
        finished_at: now(),
        outputs: ["config.json", "results.csv", "results.json"]
            .iter()
            .map(|f| args.out.join(f).display().to_string())
            .collect(),
    };
    let manifest_json =
        serde_json::to_string_pretty(&manifest).expect("manifest serializes") + "\n";
    write_atomic(&args.out.join("manifest.json"), &manifest_json)?;
    Ok(())
}

fn execute(config: &ExperimentConfig, workers: Option<usize>) -> CliResult<RunOutput> {
    let go = || -> CliResult<RunOutput> {
        let total = config.trials;
        let progress = |trial: usize| eprintln!("trial {} of {total} done", trial + 1);
        match &config.sweep {
            Some(spec) => {
                let mut template = config.clone();
                template.sweep = None;
                sweep(&template, spec.axis, &spec.values)
                    .map(RunOutput::Sweep)
                    .map_err(classify)
            }
            None => run_monte_carlo_with_progress(config, progress)
                .map(RunOutput::Single)
                .map_err(classify),
        }
    };
    match workers {
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| CliError::runtime(format!("cannot build thread pool: {e}")))?;
            pool.install(go)
        }
        None => go(),
    }
}

/// Trial failures are runtime errors; anything the config could have
/// prevented is a usage error.
fn classify(err: codcal::Error) -> CliError {
    match err {
        codcal::Error::Trial { .. } => CliError::runtime(err),
        other => CliError::usage(other),
    }
}

fn apply_override(tree: &mut Value, entry: &str) -> CliResult<()> {
    let (key, raw_value) = entry
        .split_once('=')
        .ok_or_else(|| CliError::usage(format!("--set expects key=value, got {entry:?}")))?;
    // bare words become JSON strings so `--set scorer.kind=knn` works
    let value: Value =
        serde_json::from_str(raw_value).unwrap_or_else(|_| Value::String(raw_value.to_string()));
    let mut node = tree;
    let parts: Vec<&str> = key.split('.').collect();
    let (last, path) = parts.split_last().expect("split_once guarantees a key");
    for part in path {
        node = node
            .as_object_mut()
            .ok_or_else(|| CliError::usage(format!("--set {key}: {part} is not an object")))?
            .entry(part.to_string())
            .or_insert_with(|| Value::Object(Default::default()));
    }
    node.as_object_mut()
        .ok_or_else(|| CliError::usage(format!("--set {key}: parent is not an object")))?
        .insert(last.to_string(), value);
    Ok(())
}

fn now() -> String {
    Utc::now().to_rfc3339_opts(SecondsFormat::Millis, true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overrides_reach_nested_fields() {
        let mut tree: Value = serde_json::json!({"split": {"cal_size": 10}});
        apply_override(&mut tree, "split.cal_size=99").unwrap();
        apply_override(&mut tree, "alpha=[0.02]").unwrap();
        apply_override(&mut tree, "scorer.kind=knn").unwrap();
        assert_eq!(tree["split"]["cal_size"], 99);
        assert_eq!(tree["alpha"][0], 0.02);
        assert_eq!(tree["scorer"]["kind"], "knn");
        assert!(apply_override(&mut tree, "novalue").is_err());
    }
}
