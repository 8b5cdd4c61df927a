use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

const BIN: &str = env!("CARGO_BIN_EXE_zernike");
const SCHEMA: &str = include_str!("../schemas/run_report.schema.json");
const I4: &str = include_str!("fixtures/i4.txt");

fn zernike(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

/// Runs with `--json` into `dir`, validates the report and returns it with
/// the exit code.
fn with_report(dir: &Path, args: &[&str]) -> (i32, Value, Output) {
    let path = dir.join("report.json");
    let mut full = args.to_vec();
    let p = path.to_str().unwrap().to_string();
    full.extend(["--json", &p]);
    let out = zernike(&full);
    let report: Value = serde_json::from_slice(&std::fs::read(&path).unwrap()).unwrap();
    let schema: Value = serde_json::from_str(SCHEMA).unwrap();
    let validator = jsonschema::validator_for(&schema).unwrap();
    let errors: Vec<String> = validator.iter_errors(&report).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{errors:?}\n{report:#}");
    (out.status.code().unwrap(), report, out)
}

fn write_config(dir: &Path, name: &str, body: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p
}

#[test]
fn solve_ansatz_order_one() {
    let out = zernike(&["solve-ansatz", "--N", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "p2^2 + g1*q2*p2\n");
}

#[test]
fn solve_ansatz_order_four_matches_fixture() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().join("out");
    let (code, report, out) = with_report(dir.path(), &["solve-ansatz", "--N", "4", "--out-dir", out_dir.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(stdout(&out), I4);
    assert_eq!(std::fs::read_to_string(out_dir.join("I_4.txt")).unwrap(), I4);
    assert_eq!(report["artifacts"].as_array().unwrap().len(), 3);
    assert_eq!(report["result"]["residual_is_zero"], true);
    let labels: Vec<&str> = report["result"]["q_polynomials"]
        .as_array()
        .unwrap()
        .iter()
        .map(|q| q["label"].as_str().unwrap())
        .collect();
    assert!(labels.contains(&"Q^(2,2)"), "{labels:?}");
}

#[test]
fn solve_ansatz_order_three_drops_g4() {
    let three = stdout(&zernike(&["solve-ansatz", "--N", "3"]));
    let kept: Vec<&str> = I4.trim().split(" + ").collect();
    // every N = 3 term appears among the N = 4 terms
    for term in three.trim().split(" + ") {
        assert!(!term.contains("g4"));
        assert!(I4.contains(term.trim_start_matches("- ")), "{term} not in {kept:?}");
    }
}

#[test]
fn verify_classical_report() {
    let dir = tempfile::tempdir().unwrap();
    let (code, report, _) = with_report(dir.path(), &["--quiet", "verify", "classical", "--N", "4", "--seed", "11"]);
    assert_eq!(code, 0);
    assert_eq!(report["seed"], 11);
    assert_eq!(report["spec"]["N"], 4);
    assert_eq!(report["result"]["residual_zero"], true);
    assert_eq!(report["result"]["higgs_order"], 7);
}

#[test]
fn verify_classical_numeric_gamma() {
    let dir = tempfile::tempdir().unwrap();
    let (code, report, _) = with_report(dir.path(), &["--quiet", "verify", "classical", "--N", "2", "--gamma", "-1/2,2*i"]);
    assert_eq!(code, 0);
    assert_eq!(report["spec"]["gamma"][1], "2*i");
}

#[test]
fn verify_quantum_report() {
    let dir = tempfile::tempdir().unwrap();
    let (code, report, _) = with_report(dir.path(), &["--quiet", "verify", "quantum", "--N", "3"]);
    assert_eq!(code, 0);
    assert_eq!(report["result"]["all_passed"], true);
}

#[test]
fn usage_errors() {
    let dir = tempfile::tempdir().unwrap();
    let (code, report, _) = with_report(dir.path(), &["verify", "classical", "--N", "0"]);
    assert_eq!(code, 64);
    assert!(report["result"]["error"].as_str().unwrap().contains("order 0"));
    assert_eq!(zernike(&["verify", "quantum", "--N", "5"]).status.code(), Some(64));
    assert_eq!(zernike(&["verify", "classical", "--N", "2", "--gamma", "0.5,1"]).status.code(), Some(64));
    assert_eq!(zernike(&["verify", "classical", "--N", "2", "--gamma", "1"]).status.code(), Some(64));
    assert_eq!(zernike(&["frobnicate"]).status.code(), Some(64));
}

#[test]
fn spectrum_zernike_levels() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("levels.csv");
    let (code, report, _) = with_report(
        dir.path(),
        &["spectrum", "--N", "4", "--params", "-2,-1,0,0", "--n-max", "4", "--csv", csv.to_str().unwrap()],
    );
    assert_eq!(code, 0);
    let types = report["result"]["types"].as_array().unwrap();
    assert_eq!(types.len(), 2);
    for t in types {
        assert_eq!(t["u"], "-(1/2)*n");
        let levels: Vec<&str> = t["first_k_levels"].as_array().unwrap().iter().map(|v| v.as_str().unwrap()).collect();
        assert_eq!(levels, ["0", "3", "8", "15", "24"]);
    }
    assert_eq!(
        std::fs::read_to_string(&csv).unwrap(),
        "n,E_I,E_II\n0,0,0\n1,3,3\n2,8,8\n3,15,15\n4,24,24\n"
    );
}

#[test]
fn spectrum_symbolic_and_single_level() {
    let out = zernike(&["spectrum", "--N", "4", "--n-max", "0"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("E(n) = -nu*n^4 - mu*n^3 - alpha*n^2 - beta*n"), "{text}");
    assert!(text.contains("levels n = 0..0: 0\n"), "{text}");
}

#[test]
fn simulate_free_motion() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "free.json",
        r#"{"system": {"type": "cartesian", "gamma": ["0", "0"]}, "initial_state": [0, 0, 1, 0],
            "t_end": 5, "dt": 0.001, "integrator": "implicit-midpoint"}"#,
    );
    let csv = dir.path().join("free.csv");
    let (code, report, _) = with_report(dir.path(), &["simulate", cfg.to_str().unwrap(), "--csv", csv.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(report["result"]["drift_H"], 0.0);
    let text = std::fs::read_to_string(&csv).unwrap();
    assert!(text.starts_with("t,q1,q2,p1,p2,H,C,I_N\n"));
    assert_eq!(text.lines().count(), 5002);
}

#[test]
fn simulate_closed_curved_orbit() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "osc.json",
        r#"{"system": {"type": "curved", "kappa": 0.0, "omega": 1.0}, "initial_state": [0.7, 0.0, 0.1, 0.3],
            "t_end": 4.0, "dt": 1e-4, "integrator": "implicit-midpoint"}"#,
    );
    let csv = dir.path().join("osc.csv");
    let (code, report, _) = with_report(dir.path(), &["simulate", cfg.to_str().unwrap(), "--csv", csv.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(report["result"]["closed"], true);
    let period = report["result"]["period"].as_f64().unwrap();
    assert!((period - std::f64::consts::PI).abs() < 1e-4 * std::f64::consts::PI);
    assert!(std::fs::read_to_string(&csv).unwrap().starts_with("t,rho,phi,p_rho,p_phi,H,C\n"));
}

#[test]
fn simulate_refuses_complex_gamma() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "complex.json",
        r#"{"system": {"type": "cartesian", "gamma": ["2*i", "-1"]}, "initial_state": [1, 0, 0, 1],
            "t_end": 1, "dt": 0.01, "integrator": "explicit-rk4"}"#,
    );
    let out = zernike(&["simulate", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(64));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("not real"), "{err}");
}

#[test]
fn simulate_bad_config() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "bad.json",
        r#"{"system": {"type": "curved", "kappa": 0.0, "omega": 1.0}, "initial_state": [1, 0, 0, 0],
            "t_end": 1, "dt": -0.1, "integrator": "explicit-rk4"}"#,
    );
    assert_eq!(zernike(&["simulate", cfg.to_str().unwrap()]).status.code(), Some(64));
    assert_eq!(zernike(&["simulate", dir.path().join("missing.json").to_str().unwrap()]).status.code(), Some(70));
}
