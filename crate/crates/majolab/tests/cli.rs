//! End-to-end tests of the `majolab` binary: exit-code contract, output
//! formats, determinism, config files, and the seed environment override.

use std::path::Path;
use std::process::{Command, Output};

fn majolab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_majolab"))
        .args(args)
        .env_remove("MAJOLAB_SEED")
        .output()
        .expect("binary runs")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr_of(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn write_ising_spec(dir: &Path) -> std::path::PathBuf {
    let path = dir.join("ising.json");
    std::fs::write(
        &path,
        r#"{"exponents": [0.125, 1.0, 1.125], "degeneracies": [1, 1, 1], "kappa": 1.0, "uv_cutoff": 1.0}"#,
    )
    .unwrap();
    path
}

#[test]
fn spectrum_heisenberg_json() {
    let out = majolab(&[
        "spectrum",
        "--model",
        "heisenberg",
        "--delta",
        "2",
        "--modes",
        "8",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr_of(&out));
    let doc: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(doc["model"]["type"], "heisenberg");
    assert_eq!(doc["modes"], 8);
    assert_eq!(doc["weights"].as_array().unwrap().len(), 256);
    let weights: Vec<f64> = doc["weights"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_f64().unwrap())
        .collect();
    assert!(weights.windows(2).all(|w| w[1] <= w[0]));
    assert!((weights.iter().sum::<f64>() - 1.0).abs() < 1e-10);
}

#[test]
fn spectrum_rejects_bm_circle_violation() {
    let out = majolab(&[
        "spectrum", "--model", "xy", "--lambda", "0.5", "--gamma", "0.1",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_of(&out).contains("λ² + γ²"), "{}", stderr_of(&out));
}

#[test]
fn spectrum_cft_from_spec_file() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write_ising_spec(dir.path());
    let out = majolab(&[
        "spectrum",
        "--model",
        "cft",
        "--spec",
        spec.to_str().unwrap(),
        "--L",
        "16",
    ]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr_of(&out));
    let doc: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(doc["block_length"], 16.0);
    assert!(doc["q"].as_f64().unwrap() > 0.0);
    assert!(doc["weights"].as_array().unwrap().len() >= 4);
}

#[test]
fn flow_xx_verifies_and_exits_zero() {
    let out = majolab(&[
        "flow", "--model", "xx", "--L-grid", "8,16,32", "--modes", "8",
    ]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr_of(&out));
    let doc: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(doc["report"]["levels"]["fine_grained"], true);
    assert_eq!(doc["direction"], "DESCENDING_MAJORIZES");
}

#[test]
fn flow_xy_lambda_ascending() {
    let out = majolab(&[
        "flow",
        "--model",
        "xy",
        "--gamma",
        "0.5",
        "--lambda-grid",
        "1.2,1.5,2.0",
        "--direction",
        "ascending",
    ]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr_of(&out));
}

#[test]
fn flow_wrong_direction_exits_three() {
    let out = majolab(&[
        "flow",
        "--model",
        "heisenberg",
        "--delta-grid",
        "1.5,2,4",
        "--direction",
        "descending",
    ]);
    assert_eq!(out.status.code(), Some(3));
    let doc: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(doc["report"]["levels"]["fine_grained"], false);
}

#[test]
fn flow_cft_block_grid() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write_ising_spec(dir.path());
    let csv = dir.path().join("summary.csv");
    let out = majolab(&[
        "flow",
        "--model",
        "cft",
        "--spec",
        spec.to_str().unwrap(),
        "--L-grid",
        "4,16,64",
        "--csv",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr_of(&out));
    let summary = std::fs::read_to_string(&csv).unwrap();
    assert!(summary.starts_with("param,entropy,largest_eigenvalue,verdict_vs_prev"));
    assert_eq!(summary.lines().count(), 4);
}

#[test]
fn flow_cft_rejects_rising_q() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write_ising_spec(dir.path());
    let qpath = dir.path().join("qflow.csv");
    std::fs::write(&qpath, "g,q\n0,0.2\n1,0.3\n2,0.5\n").unwrap();
    let out = majolab(&[
        "flow",
        "--model",
        "cft",
        "--spec",
        spec.to_str().unwrap(),
        "--q-of-g",
        qpath.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(
        stderr_of(&out).contains("hypothesis violated"),
        "{}",
        stderr_of(&out)
    );
}

#[test]
fn flow_cft_accepts_falling_q() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write_ising_spec(dir.path());
    let qpath = dir.path().join("qflow.csv");
    std::fs::write(&qpath, "g,q\n0,0.5\n1,0.25\n2,0.1\n").unwrap();
    let out = majolab(&[
        "flow",
        "--model",
        "cft",
        "--spec",
        spec.to_str().unwrap(),
        "--q-of-g",
        qpath.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr_of(&out));
}

#[test]
fn ed_rejects_oversized_chains() {
    let out = majolab(&["ed", "--model", "xx", "--N", "20", "--block", "4"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_of(&out).contains("2..=14"), "{}", stderr_of(&out));
}

#[test]
fn ed_two_site_delta_flow_verifies() {
    let out = majolab(&[
        "ed",
        "--model",
        "heisenberg",
        "--N",
        "2",
        "--block",
        "1",
        "--delta-grid",
        "1.5,3",
    ]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr_of(&out));
    let doc: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(doc["report"]["levels"]["fine_grained"], true);
    assert_eq!(doc["report"]["ties"], 1);
}

#[test]
fn ed_block_tower_reports_violation_with_exit_three() {
    // mixed block parities on a finite open chain break the naive tower;
    // the binary must surface that as the dedicated exit code, not a crash
    let out = majolab(&["ed", "--model", "xx", "--N", "10", "--block-flow", "1..5"]);
    assert_eq!(out.status.code(), Some(3), "stderr: {}", stderr_of(&out));
    let doc: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(doc["report"]["levels"]["fine_grained"], false);
}

#[test]
fn ed_single_point_with_formula_comparison() {
    let out = majolab(&[
        "ed",
        "--model",
        "heisenberg",
        "--delta",
        "3",
        "--N",
        "8",
        "--block",
        "4",
        "--compare-formula",
        "--modes",
        "10",
    ]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr_of(&out));
    let text = stdout_of(&out);
    assert!(text.starts_with("param,index,ed_weight,formula_weight"));
    // 2^10 formula entries dominate the padded length
    assert_eq!(text.lines().count(), 1025);
}

#[test]
fn identical_config_and_seed_give_byte_identical_files() {
    let dir = tempfile::tempdir().unwrap();
    let out_a = dir.path().join("a.json");
    let out_b = dir.path().join("b.json");
    for out in [&out_a, &out_b] {
        let run = majolab(&[
            "ed",
            "--model",
            "heisenberg",
            "--delta",
            "2",
            "--N",
            "9",
            "--block",
            "4",
            "--seed",
            "1234",
            "--out",
            out.to_str().unwrap(),
        ]);
        assert_eq!(run.status.code(), Some(0), "stderr: {}", stderr_of(&run));
    }
    let a = std::fs::read(&out_a).unwrap();
    let b = std::fs::read(&out_b).unwrap();
    assert_eq!(a, b);
}

#[test]
fn seed_env_var_overrides_flag() {
    let bad = Command::new(env!("CARGO_BIN_EXE_majolab"))
        .args(["ed", "--model", "xx", "--N", "4", "--block", "2"])
        .env("MAJOLAB_SEED", "not-a-number")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("MAJOLAB_SEED"));

    let good = Command::new(env!("CARGO_BIN_EXE_majolab"))
        .args(["ed", "--model", "xx", "--N", "4", "--block", "2"])
        .env("MAJOLAB_SEED", "99")
        .output()
        .unwrap();
    assert_eq!(good.status.code(), Some(0));
}

#[test]
fn config_file_mirrors_flags() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("spectrum.json");
    std::fs::write(
        &config,
        r#"{"model": "heisenberg", "delta": 2.0, "modes": 6}"#,
    )
    .unwrap();
    let from_config = majolab(&["spectrum", "--config", config.to_str().unwrap()]);
    assert_eq!(from_config.status.code(), Some(0));
    let from_flags = majolab(&[
        "spectrum",
        "--model",
        "heisenberg",
        "--delta",
        "2",
        "--modes",
        "6",
    ]);
    assert_eq!(stdout_of(&from_config), stdout_of(&from_flags));
}

#[test]
fn ed_cache_is_reused_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache");
    let args = [
        "ed",
        "--model",
        "xx",
        "--N",
        "8",
        "--block",
        "4",
        "--cache",
        cache.to_str().unwrap(),
    ];
    let first = majolab(&args);
    assert_eq!(
        first.status.code(),
        Some(0),
        "stderr: {}",
        stderr_of(&first)
    );
    assert!(cache.join("xx_n8.f64le").exists());
    let second = majolab(&args);
    assert_eq!(stdout_of(&first), stdout_of(&second));
}

#[test]
fn missing_flags_exit_with_config_error() {
    let out = majolab(&["spectrum", "--model", "heisenberg"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_of(&out).contains("--delta"));

    let out = majolab(&["flow", "--model", "xy", "--lambda-grid", "1.2,1.5"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_of(&out).contains("--gamma"));
}
