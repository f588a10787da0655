use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn hardy(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hardy"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, body).unwrap();
    path.to_str().unwrap().to_owned()
}

#[test]
fn solve_p0_example() {
    let out = hardy(&["solve-p0", "--q", "2", "--M", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert!((v["p0"].as_f64().unwrap() - 1.7071067812).abs() < 1e-9);
    assert!(v["residual"].as_f64().unwrap().abs() < 1e-12);
}

#[test]
fn verify_discrete_constant_sequence() {
    let dir = tempfile::tempdir().unwrap();
    let seq = write(dir.path(), "seq.json", r#"{"a":[1,1,1],"lam":[1,1,1]}"#);
    let out = hardy(&["verify-discrete", "--in", &seq, "--p", "1", "--q", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["lhs"].as_f64(), Some(3.0));
    assert_eq!(v["rhs"].as_f64(), Some(6.0));
    assert_eq!(v["holds"], Value::Bool(true));
}

#[test]
fn interpolation_needs_both_exponents() {
    let dir = tempfile::tempdir().unwrap();
    let seq = write(dir.path(), "seq.json", r#"{"a":[1,2,3]}"#);
    let out = hardy(&["verify-discrete", "--in", &seq, "--p", "2", "--check", "interpolation"]);
    assert_eq!(out.status.code(), Some(2));
    let out = hardy(&[
        "verify-discrete", "--in", &seq, "--p", "2", "--check", "interpolation", "--q1", "0.5", "--q2", "1.5",
    ]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn sharpness_sweep_csv() {
    let out = hardy(&["sharpness-sweep", "--p", "2", "--q", "2", "--d", "0.3,0.4,0.49"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("d,lhs,rhs,ratio"));
    for (line, d) in lines.zip([0.3, 0.4, 0.49]) {
        let ratio: f64 = line.rsplit(',').next().unwrap().parse().unwrap();
        let expected = ((d + 1.0) / 1.5f64).powi(2);
        assert!((ratio - expected).abs() < 1e-12, "{line}");
    }
}

#[test]
fn sweep_rejects_divergent_exponent() {
    let out = hardy(&["sharpness-sweep", "--p", "2", "--q", "2", "--d", "0.5"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
}

#[test]
fn malformed_input_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.json", r#"{"kind":"power","a":-1.5}"#);
    let out = hardy(&["ap-scan", "--in", &bad, "--p", "2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));

    let missing = dir.path().join("nope.json");
    let out = hardy(&["theorem3", "--in", missing.to_str().unwrap(), "--q", "2", "--p", "1.9"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn divergent_characteristic_serializes_as_inf() {
    let dir = tempfile::tempdir().unwrap();
    // For w = x and p = 1.5 the dual power w^{-1/(p-1)} = x^{-2} is not
    // integrable at 0, so every prefix characteristic is infinite.
    let w = write(dir.path(), "w.json", r#"{"kind":"power","a":1.0}"#);
    let out = hardy(&["ap-scan", "--in", &w, "--p", "1.5", "--grid", "0.5,1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["sup"], Value::String("inf".into()));
    assert!(v["characteristics"].as_array().unwrap().iter().all(|c| c == "inf"));
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("p0.json");
    let out = hardy(&["solve-p0", "--q", "3", "--M", "1.5", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap();
    assert!(v["p0"].as_f64().unwrap() > 1.0);
}

#[test]
fn theorem3_csv_and_json_agree() {
    let dir = tempfile::tempdir().unwrap();
    let w = write(
        dir.path(),
        "w.json",
        r#"{"kind":"piecewise","breakpoints":[0,0.25,0.5,1],"values":[1,2,3],"monotone":true}"#,
    );
    let args = ["theorem3", "--in", &w, "--q", "2", "--p", "1.9"];
    let j = json(&hardy(&args));
    let mut csv_args = args.to_vec();
    csv_args.extend(["--format", "csv"]);
    let c = String::from_utf8(hardy(&csv_args).stdout).unwrap();
    assert!(c.lines().count() == 2);
    assert_eq!(j["report"]["holds"], Value::Bool(true));
}

#[test]
fn parts_identity_and_continuous_checks() {
    let dir = tempfile::tempdir().unwrap();
    let w = write(dir.path(), "w.json", r#"{"kind":"power","a":0.5}"#);
    let out = hardy(&["verify-continuous", "--in", &w, "--check", "parts", "--alpha", "2", "--u", "0.7"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(json(&out)["residual"].as_f64().unwrap() < 1e-9);

    let closed = json(&hardy(&["verify-continuous", "--in", &w, "--p", "1", "--q", "0.5"]));
    let quad = json(&hardy(&[
        "verify-continuous", "--in", &w, "--p", "1", "--q", "0.5", "--method", "quadrature", "--tol", "1e-12",
    ]));
    let (a, b) = (closed["lhs"].as_f64().unwrap(), quad["lhs"].as_f64().unwrap());
    assert!((a - b).abs() <= 1e-8 * a.abs());
}

#[test]
fn fuzz_is_byte_identical_across_runs() {
    let args = ["fuzz", "--seed", "7", "--discrete", "200", "--continuous", "20", "--self-improvement", "20"];
    let first = hardy(&args);
    let second = hardy(&args);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);
    let v = json(&first);
    for corpus in v["corpora"].as_array().unwrap() {
        for check in corpus["checks"].as_array().unwrap() {
            assert_eq!(check["failures"].as_u64(), Some(0), "{check}");
        }
    }
}
