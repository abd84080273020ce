//! End-to-end tests of the `codcal` binary: exit codes, file outputs,
//! determinism, and the exact-fraction p-value rendering.

use std::path::Path;
use std::process::{Command, Output};

fn codcal(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_codcal"))
        .args(args)
        .env_remove("CODCAL_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn write(path: &Path, contents: &str) {
    std::fs::write(path, contents).unwrap();
}

const SMALL_CONFIG: &str = r#"{
  "data": {"inlier_pool": 300, "outlier_pool": 40, "dim": 2, "shift": 3.0, "scale": 1.0},
  "split": {"train_size": 50, "cal_size": 60, "test_inlier_size": 30,
            "test_outlier_size": 10, "contamination_rate": 0.05,
            "injection": {"kind": "iid"}},
  "alpha": [0.05, 0.1],
  "budget": 6,
  "naive_rule": {"rule": "match-rate"},
  "methods": ["standard", "oracle", "naive-trim", "small-clean", "label-trim"],
  "trials": 5,
  "master_seed": 11,
  "scorer": {"kind": "knn", "k": 3}
}"#;

#[test]
fn bounds_oracle_interval_matches_paper_value() {
    let out = codcal(&["bounds", "--form", "oracle-interval", "--n", "80", "--alpha", "0.02"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "0.00765432098765 0.0200000000000\n");
}

#[test]
fn bounds_degenerate_forms_print_alpha() {
    let out = codcal(&[
        "bounds", "--form", "lemma", "--alpha", "0.02", "--n0", "100", "--n1", "0", "--cdf", "0.5",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "0.0200000000000\n");

    let out = codcal(&[
        "bounds", "--form", "mixture", "--alpha", "0.02", "--delta", "0", "--f0-minus-f1", "0.7",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "0.0200000000000\n");

    let out = codcal(&[
        "bounds", "--form", "theorem", "--alpha", "0.02", "--n0", "999", "--lt-count", "10",
        "--cdf", "0.9",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "0.0202000000000\n");
}

#[test]
fn bounds_domain_violation_exits_2() {
    let out = codcal(&[
        "bounds", "--form", "lemma", "--alpha", "0.02", "--n0", "10", "--n1", "1", "--cdf", "1.5",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let out = codcal(&["bounds", "--form", "lemma", "--alpha", "1.2", "--n0", "1", "--n1", "0",
        "--cdf", "0.5"]);
    assert_eq!(out.status.code(), Some(2));
    let out = codcal(&["bounds", "--form", "lemma", "--alpha", "0.02"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn pvalue_standard_matches_hand_count() {
    let dir = tempfile::tempdir().unwrap();
    let cal = dir.path().join("cal.csv");
    let test = dir.path().join("test.csv");
    write(&cal, "score,label\n1.0,0\n2.0,0\n3.0,0\n");
    write(&test, "score\n2.5\n");
    let out = codcal(&[
        "pvalue", "--cal", cal.to_str().unwrap(), "--test", test.to_str().unwrap(),
        "--method", "standard", "--alpha", "0.5",
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "index,score,p_fraction,p_value,reject");
    assert_eq!(lines[1], "0,2.5,2/4,0.500000000000,true");
}

#[test]
fn pvalue_exact_fraction_rendering_at_the_boundary() {
    let dir = tempfile::tempdir().unwrap();
    let cal = dir.path().join("cal.csv");
    let test = dir.path().join("test.csv");
    let mut rows = String::from("score\n");
    for i in 1..=100 {
        rows.push_str(&format!("{i}\n"));
    }
    write(&cal, &rows);
    write(&test, "score\n99.5\n");
    // p = 2/101 = 0.0198... <= 0.02, so the boundary-inclusive rule rejects
    let out = codcal(&[
        "pvalue", "--cal", cal.to_str().unwrap(), "--test", test.to_str().unwrap(),
        "--method", "standard", "--alpha", "0.02",
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert!(stdout(&out).contains("0,99.5,2/101,0.0198019801980,true"));
    // at alpha = 0.01 the same fraction is not rejected
    let out = codcal(&[
        "pvalue", "--cal", cal.to_str().unwrap(), "--test", test.to_str().unwrap(),
        "--method", "standard", "--alpha", "0.01",
    ]);
    assert!(stdout(&out).contains("0,99.5,2/101,0.0198019801980,false"));
}

#[test]
fn pvalue_label_trim_zero_budget_equals_standard() {
    let dir = tempfile::tempdir().unwrap();
    let cal = dir.path().join("cal.csv");
    let test = dir.path().join("test.csv");
    write(&cal, "score,label\n1.0,0\n2.0,1\n3.0,0\n4.0,1\n");
    write(&test, "score\n2.5\n3.5\n");
    let run = |method: &str, m: &str| {
        let out = codcal(&[
            "pvalue", "--cal", cal.to_str().unwrap(), "--test", test.to_str().unwrap(),
            "--method", method, "--m", m, "--alpha", "0.2",
        ]);
        assert!(out.status.success(), "{}", stderr(&out));
        stdout(&out)
    };
    assert_eq!(run("label-trim", "0"), run("standard", "0"));
    // trimming the two outliers: cal becomes [1, 3]
    let trimmed = run("label-trim", "4");
    assert!(trimmed.contains("0,2.5,2/3,"));
}

#[test]
fn pvalue_oracle_methods_require_label_column() {
    let dir = tempfile::tempdir().unwrap();
    let cal = dir.path().join("cal.csv");
    let test = dir.path().join("test.csv");
    write(&cal, "score\n1.0\n2.0\n");
    write(&test, "score\n1.5\n");
    for method in ["label-trim", "small-clean"] {
        let out = codcal(&[
            "pvalue", "--cal", cal.to_str().unwrap(), "--test", test.to_str().unwrap(),
            "--method", method, "--m", "1", "--alpha", "0.1",
        ]);
        assert_eq!(out.status.code(), Some(2), "method {method}");
        assert!(stderr(&out).contains("label"));
    }
}

#[test]
fn pvalue_multicolumn_needs_train() {
    let dir = tempfile::tempdir().unwrap();
    let cal = dir.path().join("cal.csv");
    let test = dir.path().join("test.csv");
    write(&cal, "a,b,label\n0.0,0.0,0\n1.0,1.0,0\n0.5,0.5,0\n");
    write(&test, "a,b\n5.0,5.0\n");
    let out = codcal(&[
        "pvalue", "--cal", cal.to_str().unwrap(), "--test", test.to_str().unwrap(),
        "--method", "standard", "--alpha", "0.5",
    ]);
    assert_eq!(out.status.code(), Some(2));

    let train = dir.path().join("train.csv");
    write(&train, "a,b\n0.0,0.0\n1.0,0.0\n0.0,1.0\n1.0,1.0\n");
    let out = codcal(&[
        "pvalue", "--cal", cal.to_str().unwrap(), "--test", test.to_str().unwrap(),
        "--train", train.to_str().unwrap(), "--scorer", "knn", "--k", "1",
        "--method", "standard", "--alpha", "0.5",
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    // the far-away test point scores above the whole calibration set
    assert!(stdout(&out).contains("1/4"));
}

#[test]
fn gen_round_trips_through_pvalue() {
    let dir = tempfile::tempdir().unwrap();
    let data = dir.path().join("data.csv");
    let out = codcal(&[
        "gen", "--out", data.to_str().unwrap(), "--n-inlier", "30", "--n-outlier", "5",
        "--dim", "2", "--shift", "3.0", "--seed", "9",
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = std::fs::read_to_string(&data).unwrap();
    assert!(text.starts_with("x0,x1,label\n"));
    assert_eq!(text.lines().count(), 36);

    // seed fallback through the environment gives identical bytes
    let data2 = dir.path().join("data2.csv");
    let out = Command::new(env!("CARGO_BIN_EXE_codcal"))
        .args(["gen", "--out", data2.to_str().unwrap(), "--n-inlier", "30",
               "--n-outlier", "5", "--dim", "2", "--shift", "3.0"])
        .env("CODCAL_SEED", "9")
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(text, std::fs::read_to_string(&data2).unwrap());

    let out = codcal(&["gen", "--out", data.to_str().unwrap(), "--n-inlier", "1",
        "--n-outlier", "0", "--dim", "0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn simulate_writes_outputs_and_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("config.json");
    write(&config, SMALL_CONFIG);
    let out_a = dir.path().join("a");
    let out_b = dir.path().join("b");
    for out_dir in [&out_a, &out_b] {
        let out = codcal(&[
            "simulate", "--config", config.to_str().unwrap(),
            "--out", out_dir.to_str().unwrap(),
        ]);
        assert!(out.status.success(), "{}", stderr(&out));
        for file in ["results.csv", "results.json", "manifest.json", "config.json"] {
            assert!(out_dir.join(file).exists(), "missing {file}");
        }
    }
    let csv_a = std::fs::read_to_string(out_a.join("results.csv")).unwrap();
    let csv_b = std::fs::read_to_string(out_b.join("results.csv")).unwrap();
    assert_eq!(csv_a, csv_b);
    assert!(csv_a.starts_with("# config_hash="));

    let manifest: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(out_a.join("manifest.json")).unwrap())
            .unwrap();
    assert_eq!(manifest["master_seed"], 11);
    assert!(manifest["config_hash"].as_str().unwrap().len() == 64);

    // per-trial progress lines on stderr
    let out = codcal(&[
        "simulate", "--config", config.to_str().unwrap(),
        "--out", dir.path().join("c").to_str().unwrap(),
    ]);
    assert!(stderr(&out).contains("trial"));
}

#[test]
fn simulate_workers_flag_does_not_change_results() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("config.json");
    write(&config, SMALL_CONFIG);
    let mut outputs = Vec::new();
    for workers in ["1", "4"] {
        let out_dir = dir.path().join(format!("w{workers}"));
        let out = codcal(&[
            "simulate", "--config", config.to_str().unwrap(),
            "--out", out_dir.to_str().unwrap(), "--workers", workers,
        ]);
        assert!(out.status.success(), "{}", stderr(&out));
        outputs.push(std::fs::read_to_string(out_dir.join("results.csv")).unwrap());
    }
    assert_eq!(outputs[0], outputs[1]);
}

#[test]
fn simulate_overrides_narrow_the_grid() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("config.json");
    write(&config, SMALL_CONFIG);
    let out_dir = dir.path().join("out");
    let out = codcal(&[
        "simulate", "--config", config.to_str().unwrap(),
        "--out", out_dir.to_str().unwrap(),
        "--set", "alpha=[0.02]", "--set", "trials=2",
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let csv = std::fs::read_to_string(out_dir.join("results.csv")).unwrap();
    assert!(csv.contains("standard,0.02,"));
    assert!(!csv.contains(",0.05,"));
    let effective: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(out_dir.join("config.json")).unwrap())
            .unwrap();
    assert_eq!(effective["trials"], 2);
}

#[test]
fn simulate_sweep_config_produces_axis_rows() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("config.json");
    let mut cfg: serde_json::Value = serde_json::from_str(SMALL_CONFIG).unwrap();
    cfg["trials"] = 2.into();
    cfg["alpha"] = serde_json::json!([0.05]);
    cfg["sweep"] = serde_json::json!({"axis": "contamination-rate", "values": [0.0, 0.05]});
    write(&config, &cfg.to_string());
    let out_dir = dir.path().join("out");
    let out = codcal(&[
        "simulate", "--config", config.to_str().unwrap(),
        "--out", out_dir.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let csv = std::fs::read_to_string(out_dir.join("results.csv")).unwrap();
    assert!(csv.lines().nth(1).unwrap().starts_with("axis,axis_value,method,"));
    assert!(csv.contains("contamination-rate,0,"));
    assert!(csv.contains("contamination-rate,0.05,"));
}

#[test]
fn simulate_bad_config_exits_2_with_field() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("config.json");
    let mut cfg: serde_json::Value = serde_json::from_str(SMALL_CONFIG).unwrap();
    cfg["split"]["contamination_rate"] = serde_json::json!("high");
    write(&config, &cfg.to_string());
    let out = codcal(&[
        "simulate", "--config", config.to_str().unwrap(),
        "--out", dir.path().join("out").to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("contamination_rate"), "{}", stderr(&out));

    let out = codcal(&[
        "simulate", "--config", dir.path().join("missing.json").to_str().unwrap(),
        "--out", dir.path().join("out").to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn seed_flag_overrides_config_seed() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("config.json");
    write(&config, SMALL_CONFIG);
    let out_dir = dir.path().join("out");
    let out = codcal(&[
        "simulate", "--config", config.to_str().unwrap(),
        "--out", out_dir.to_str().unwrap(), "--seed", "77",
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let csv = std::fs::read_to_string(out_dir.join("results.csv")).unwrap();
    assert!(csv.contains("master_seed=77"));
}
