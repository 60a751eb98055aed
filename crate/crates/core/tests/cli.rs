//! End-to-end tests of the `twistreg` binary: document ingestion, report
//! shape, exit codes, and the CSV output.

use std::io::Write;
use std::process::Command;

const LAPLACIAN: &str = r#"{
  "kind": "twisted",
  "coefficients": {
    "a20": [1.0, 0.0], "a11": [0.0, 0.0], "a02": [1.0, 0.0],
    "a10": [0.0, 0.0], "a01": [0.0, 0.0], "a00": [0.0, 0.0]
  },
  "frame": {"alpha": -1.0, "beta": -0.5, "gamma": 1.0, "delta": -0.5}
}"#;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_twistreg"))
}

fn write_doc(name: &str, text: &str) -> std::path::PathBuf {
    let path = std::env::temp_dir().join(format!("twistreg-test-{name}-{}.json", std::process::id()));
    let mut f = std::fs::File::create(&path).unwrap();
    f.write_all(text.as_bytes()).unwrap();
    path
}

#[test]
fn classify_twisted_laplacian() {
    let path = write_doc("laplacian", LAPLACIAN);
    let out = bin().arg("classify").arg(&path).output().unwrap();
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["twisted_regular"], serde_json::json!(true));
    assert_eq!(report["matched_condition"], serde_json::json!(833));
    assert_eq!(report["source_regular"], serde_json::json!(true));
    assert_eq!(report["source_injective"], serde_json::json!(true));
    let lambda = report["lambda"].as_array().unwrap();
    assert!(lambda[0].as_f64().unwrap().abs() < 1e-12);
    std::fs::remove_file(path).ok();
}

#[test]
fn classify_source_not_regular() {
    let doc = r#"{
      "kind": "source",
      "coefficients": {
        "a20": [1.0, 0.0], "a11": [0.0, 0.0], "a02": [0.0, 0.0],
        "a10": [0.0, 0.0], "a01": [0.0, 0.0], "a00": [-1.0, 0.0]
      }
    }"#;
    let path = write_doc("d2m1", doc);
    let out = bin().arg("classify").arg(&path).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["source_regular"], serde_json::json!(false));
    assert_eq!(report["twisted_regular"], serde_json::json!(false));
    std::fs::remove_file(path).ok();
}

#[test]
fn malformed_input_exits_one() {
    let path = write_doc("bad", "{ not json");
    let out = bin().arg("classify").arg(&path).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(!out.stderr.is_empty());
    std::fs::remove_file(path).ok();

    // Frame missing for a twisted document.
    let doc = r#"{"kind": "twisted", "coefficients": {
        "a20": [1,0], "a11": [0,0], "a02": [0,0], "a10": [0,0], "a01": [0,0], "a00": [0,0]}}"#;
    let path = write_doc("frameless", doc);
    let out = bin().arg("classify").arg(&path).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    std::fs::remove_file(path).ok();
}

#[test]
fn specfun_values_and_sector_error() {
    let out = bin()
        .args(["specfun", "phi", "--p", "1", "--q", "2", "--z", "1,0"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!((v["value"][0].as_f64().unwrap() - (1f64.exp() - 1.0)).abs() < 1e-12);
    assert_eq!(v["route"], "series");

    let out = bin()
        .args(["specfun", "theta", "--p", "0", "--z", "3,1"])
        .output()
        .unwrap();
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!((v["value"][0].as_f64().unwrap() - 1.0).abs() < 1e-12);

    let out = bin()
        .args(["specfun", "airy", "--which", "ai", "--z", "0,0"])
        .output()
        .unwrap();
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!((v["value"][0].as_f64().unwrap() - 0.3550280539).abs() < 1e-9);

    // Explicit asymptotic request outside the sector: exit 1.
    let out = bin()
        .args(["specfun", "phi", "--p", "1", "--q", "2", "--z", "-30,0", "--asym", "4"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn solve_csv_shape() {
    let doc = r#"{
      "kind": "source",
      "coefficients": {
        "a20": [1.0, 0.0], "a11": [0.0, 0.0], "a02": [0.0, 0.0],
        "a10": [0.0, 0.0], "a01": [0.0, 0.0], "a00": [1.0, 0.0]
      }
    }"#;
    let path = write_doc("solve", doc);
    let out = bin()
        .args(["solve"])
        .arg(&path)
        .args(["--c1", "1,0", "--c2", "0,0", "--grid", "-1:1:0.25"])
        .output()
        .unwrap();
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "x,re_u,im_u,abs_u,envelope");
    assert_eq!(lines.len(), 10); // header + 9 grid points
    // |u| = e^x for D² + 1 with (1, 0).
    let mid: Vec<&str> = lines[5].split(',').collect();
    let x: f64 = mid[0].parse().unwrap();
    let abs_u: f64 = mid[3].parse().unwrap();
    assert!((abs_u - x.exp()).abs() < 1e-10);
    std::fs::remove_file(path).ok();
}

#[test]
fn verify_subset_reports_json_lines() {
    let out = bin()
        .args(["verify", "--suite", "quad/laplace", "--jobs", "1"])
        .output()
        .unwrap();
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut n = 0;
    for line in text.lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(v["passed"], serde_json::json!(true));
        n += 1;
    }
    assert!(n >= 2, "expected the laplace and laplace-tail checks, got {n}");
}

#[test]
fn document_reemission_is_value_identical() {
    let doc = twistreg::cli::OperatorDocument::from_json(LAPLACIAN).unwrap();
    let emitted = doc.to_json();
    let a: serde_json::Value = serde_json::from_str(LAPLACIAN).unwrap();
    let b: serde_json::Value = serde_json::from_str(&emitted).unwrap();
    assert_eq!(a, b);
}
