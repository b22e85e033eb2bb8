use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn pmech(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pmech")).args(args).output().expect("binary runs")
}

fn write_config(dir: &Path, text: &str) -> PathBuf {
    let path = dir.join("scenario.toml");
    fs::write(&path, text).unwrap();
    path
}

fn manifest(dir: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(dir.join("manifest.json")).unwrap()).unwrap()
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

#[test]
fn empty_outputs_write_only_the_manifest() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(tmp.path(), "model = \"kappa\"\nseed = 1\noutputs = []\n");
    let out_dir = tmp.path().join("out");
    let out = pmech(&["run", cfg.to_str().unwrap(), "--out", out_dir.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let m = manifest(&out_dir);
    assert_eq!(m["artifacts"].as_array().unwrap().len(), 0);
    assert_eq!(m["files"], serde_json::json!(["manifest.json"]));
    assert!(m["summaries"]["classical_limit_deviation"].is_number());
}

#[test]
fn repeated_runs_are_byte_identical() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = fixture("su2_golden.toml");
    let (a, b) = (tmp.path().join("a"), tmp.path().join("b"));
    for dir in [&a, &b] {
        assert_eq!(code(&pmech(&["run", cfg.to_str().unwrap(), "--out", dir.to_str().unwrap()])), 0);
    }
    let names: Vec<String> = manifest(&a)["files"].as_array().unwrap().iter().map(|v| v.as_str().unwrap().to_string()).collect();
    assert_eq!(names, ["certificate.csv", "manifest.json", "trajectory.csv"]);
    for name in names {
        assert_eq!(fs::read(a.join(&name)).unwrap(), fs::read(b.join(&name)).unwrap(), "{name}");
    }
}

#[test]
fn config_errors_exit_2_and_name_the_field() {
    let tmp = tempfile::tempdir().unwrap();
    let cases = [
        ("model = \"su2\"\nseed = 0\noutputs = []\n[params]\nmass = 1.0\n", "params.mass"),
        ("model = \"su2\"\nseed = 0\noutputs = [\"trajectory\", \"hyperbola\"]\n", "outputs[1]"),
        ("model = \"ads\"\nseed = 0\noutputs = []\n", "model"),
        ("model = \"kappa\"\nseed = 0\noutputs = []\ncolour = 3\n", "colour"),
    ];
    for (i, (text, field)) in cases.iter().enumerate() {
        let dir = tmp.path().join(format!("c{i}"));
        fs::create_dir(&dir).unwrap();
        let cfg = write_config(&dir, text);
        let out = pmech(&["run", cfg.to_str().unwrap(), "--out", dir.join("out").to_str().unwrap()]);
        assert_eq!(code(&out), 2);
        let err = String::from_utf8_lossy(&out.stderr);
        assert!(err.contains(field), "{err}");
        assert!(!dir.join("out").exists());
    }
}

#[test]
fn missing_config_exits_2() {
    let tmp = tempfile::tempdir().unwrap();
    let out = pmech(&["run", tmp.path().join("none.toml").to_str().unwrap(), "--out", tmp.path().join("o").to_str().unwrap()]);
    assert_eq!(code(&out), 2);
}

#[test]
fn failing_certificate_exits_1_but_writes_files() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(
        tmp.path(),
        "model = \"su2\"\nseed = 3\noutputs = [\"certificate\"]\n[params]\nstep = 0.5\ntol = 1.0\nt_end = 2.0\n",
    );
    let out_dir = tmp.path().join("out");
    let out = pmech(&["run", cfg.to_str().unwrap(), "--out", out_dir.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stdout).contains("FAIL"));
    let m = manifest(&out_dir);
    assert_eq!(m["certificates_pass"], Value::Bool(false));
    assert!(out_dir.join("certificate.csv").exists());
}

#[test]
fn non_empty_output_directory_is_refused() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(tmp.path(), "model = \"kappa\"\nseed = 1\noutputs = []\n");
    let out = pmech(&["run", cfg.to_str().unwrap(), "--out", tmp.path().to_str().unwrap()]);
    assert_eq!(code(&out), 3);
    assert!(String::from_utf8_lossy(&out.stderr).contains("not empty"));
    assert!(!tmp.path().join("manifest.json").exists());
}

#[test]
fn sweep_marks_bad_rows_and_keeps_order() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(tmp.path(), "model = \"minkowski2d\"\nseed = 1\noutputs = [\"certificate\"]\n");
    let out_dir = tmp.path().join("out");
    let out = Command::new(env!("CARGO_BIN_EXE_pmech"))
        .args(["sweep", cfg.to_str().unwrap(), "--param", "mass", "--values", "1,-1,2", "--out", out_dir.to_str().unwrap()])
        .env("POISSON_MECH_WORKERS", "2")
        .output()
        .unwrap();
    assert_eq!(code(&out), 1);
    let m = manifest(&out_dir);
    let status: Vec<&str> = m["rows"].as_array().unwrap().iter().map(|r| r["status"].as_str().unwrap()).collect();
    assert_eq!(status, ["ok", "error", "ok"]);
    assert_eq!(m["all_ok"], Value::Bool(false));
    let csv = fs::read_to_string(out_dir.join("sweep.csv")).unwrap();
    let rows: Vec<&str> = csv.lines().skip(1).collect();
    assert_eq!(rows.len(), 3);
    assert!(rows[1].starts_with("1,-1.0000000000000000e0,error"));
}

#[test]
fn sweep_rejects_unknown_parameter_and_bad_worker_count() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(tmp.path(), "model = \"kappa\"\nseed = 1\noutputs = []\n");
    let out = pmech(&["sweep", cfg.to_str().unwrap(), "--param", "tol", "--values", "1", "--out", tmp.path().join("o").to_str().unwrap()]);
    assert_ne!(code(&out), 0);
    let out = Command::new(env!("CARGO_BIN_EXE_pmech"))
        .args(["sweep", cfg.to_str().unwrap(), "--param", "epsilon", "--values", "0.1", "--out", tmp.path().join("p").to_str().unwrap()])
        .env("POISSON_MECH_WORKERS", "0")
        .output()
        .unwrap();
    assert_ne!(code(&out), 0);
}

#[test]
fn json_format_writes_json_tables() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(tmp.path(), "model = \"minkowski2d\"\nseed = 2\noutputs = [\"hyperbola\"]\n[params]\nsamples = 9\n");
    let out_dir = tmp.path().join("out");
    let out = pmech(&["--format", "json", "run", cfg.to_str().unwrap(), "--out", out_dir.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let table: Value = serde_json::from_str(&fs::read_to_string(out_dir.join("hyperbola.json")).unwrap()).unwrap();
    assert_eq!(table["columns"], serde_json::json!(["x_plus", "x_minus", "residual"]));
    assert_eq!(table["rows"].as_array().unwrap().len(), 9);
    assert_eq!(manifest(&out_dir)["format"], "json");
}

#[test]
fn certify_runs_every_model() {
    for model in ["minkowski2d", "kappa", "su2"] {
        let out = pmech(&["certify", model, "--epsilon", "0.2", "--seed", "4"]);
        assert_eq!(code(&out), 0, "{model}: {}", String::from_utf8_lossy(&out.stdout));
        assert!(String::from_utf8_lossy(&out.stdout).contains("pass"));
    }
    assert_eq!(code(&pmech(&["certify", "ads", "--epsilon", "0.2"])), 2);
}

/// Values from an independent matrix-exponential evaluation of the free
/// motion `A(t) = u0 exp(t Omega) B0` for the golden config.
const GOLDEN_H: f64 = 1.0532662786205693;
const GOLDEN_A1: [f64; 8] = [
    0.6628775466485389,
    0.047476835732365295,
    0.12894424199332988,
    0.7384601275956887,
    -0.04987660408436721,
    0.9375401030998646,
    0.46114865805290933,
    0.0937799684784923,
];

#[test]
fn golden_su2_run_matches_reference_values() {
    let tmp = tempfile::tempdir().unwrap();
    let out_dir = tmp.path().join("out");
    let out = pmech(&["run", fixture("su2_golden.toml").to_str().unwrap(), "--out", out_dir.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let m = manifest(&out_dir);
    let s = &m["summaries"];
    assert!((s["hamiltonian"].as_f64().unwrap() - GOLDEN_H).abs() < 1e-12);
    assert!(s["det_residual_max"].as_f64().unwrap() < 1e-8);
    assert!(s["momentum_drift_max"].as_f64().unwrap() < 1e-6);
    assert!(s["accepted_steps"].is_u64());

    let csv = fs::read_to_string(out_dir.join("trajectory.csv")).unwrap();
    let last: Vec<f64> = csv.lines().last().unwrap().split(',').map(|c| c.parse().unwrap()).collect();
    assert_eq!(last[0], 1.0);
    for (got, want) in last[1..9].iter().zip(GOLDEN_A1) {
        assert!((got - want).abs() < 1e-12, "{got} vs {want}");
    }
}
