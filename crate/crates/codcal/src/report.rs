//! Result serialization: a plot-ready CSV (one row per method, alpha, and
//! axis value) and a JSON document mirroring the aggregate metrics. Both
//! embed the config hash and master seed for provenance.
//!
//! Formatting uses Rust's shortest round-trip float rendering, so output is
//! byte-identical across worker counts and platforms.

use serde::Serialize;

use crate::experiments::{AggregateMetrics, AggregateRow, MeanSe, SweepResult};

/// A completed run: either a single experiment or a sweep.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RunOutput {
    Single(AggregateMetrics),
    Sweep(SweepResult),
}

/// The JSON results document.
#[derive(Debug, Clone, Serialize)]
pub struct ResultsDocument<'a> {
    pub config_hash: &'a str,
    pub master_seed: u64,
    #[serde(flatten)]
    pub output: &'a RunOutput,
}

const CSV_COLUMNS: &str = "method,alpha,type_i_error_mean,type_i_error_se,power_mean,power_se,\
trimmed_outliers_mean,trimmed_outliers_se,trimmed_inliers_mean,trimmed_inliers_se,\
bound_cdf_mean,bound_cdf_se,lt_outlier_count_mean,lt_outlier_count_se,\
lt_bracket_mean,lt_bracket_se,trials";

/// Renders the results CSV. The first line is a provenance comment; sweep
/// outputs carry two extra leading columns naming the axis and its value.
pub fn results_csv(config_hash: &str, master_seed: u64, output: &RunOutput) -> String {
    let mut out = format!("# config_hash={config_hash} master_seed={master_seed}\n");
    match output {
        RunOutput::Single(metrics) => {
            out.push_str(CSV_COLUMNS);
            out.push('\n');
            for row in &metrics.rows {
                push_row(&mut out, None, row, metrics.trials);
            }
        }
        RunOutput::Sweep(sweep) => {
            let axis = serde_plain_name(&sweep.axis);
            out.push_str("axis,axis_value,");
            out.push_str(CSV_COLUMNS);
            out.push('\n');
            for point in &sweep.points {
                for row in &point.metrics.rows {
                    push_row(
                        &mut out,
                        Some((axis.as_str(), point.value)),
                        row,
                        point.metrics.trials,
                    );
                }
            }
        }
    }
    out
}

/// Renders the JSON results document (pretty-printed, trailing newline).
pub fn results_json(config_hash: &str, master_seed: u64, output: &RunOutput) -> String {
    let doc = ResultsDocument {
        config_hash,
        master_seed,
        output,
    };
    let mut text = serde_json::to_string_pretty(&doc).expect("results serialize");
    text.push('\n');
    text
}

fn push_row(out: &mut String, axis: Option<(&str, f64)>, row: &AggregateRow, trials: usize) {
    if let Some((name, value)) = axis {
        out.push_str(&format!("{name},{value},"));
    }
    out.push_str(row.method.name());
    out.push(',');
    out.push_str(&format!("{}", row.alpha));
    push_opt(out, &row.type_i_error);
    push_opt(out, &row.power);
    push_mean_se(out, &row.trimmed_outliers);
    push_mean_se(out, &row.trimmed_inliers);
    push_opt(out, &row.bound_cdf);
    push_opt(out, &row.lt_outlier_count);
    push_opt(out, &row.lt_bracket);
    out.push_str(&format!(",{trials}\n"));
}

fn push_mean_se(out: &mut String, ms: &MeanSe) {
    out.push_str(&format!(",{},{}", ms.mean, ms.se));
}

fn push_opt(out: &mut String, ms: &Option<MeanSe>) {
    match ms {
        Some(ms) => push_mean_se(out, ms),
        None => out.push_str(",,"),
    }
}

fn serde_plain_name<T: Serialize>(value: &T) -> String {
    let json = serde_json::to_value(value).expect("axis serializes");
    json.as_str().expect("axis is a plain string").to_string()
}

/// Presentation helper: power per method divided by the Standard method's
/// power at the same alpha. Raw powers stay the stored metric; this is for
/// table-style reporting only. `None` when the Standard row is missing, has
/// no power, or has zero power.
pub fn relative_power(
    metrics: &AggregateMetrics,
    alpha: f64,
) -> Option<Vec<(crate::experiments::Method, f64)>> {
    let standard = metrics
        .row(crate::experiments::Method::Standard, alpha)?
        .power?
        .mean;
    if standard == 0.0 {
        return None;
    }
    Some(
        metrics
            .rows
            .iter()
            .filter(|r| r.alpha == alpha)
            .filter_map(|r| r.power.map(|p| (r.method, p.mean / standard)))
            .collect(),
    )
}
