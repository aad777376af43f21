use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn write(dir: &TempDir, name: &str, body: &str) -> PathBuf {
    let path = dir.path().join(name);
    fs::write(&path, body).unwrap();
    path
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cliquepf")).args(args).output().unwrap()
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn f(v: &Value) -> f64 {
    v.as_f64().unwrap()
}

#[test]
fn pf_on_triangle_matches_oracle() {
    let dir = TempDir::new().unwrap();
    let k3 = write(&dir, "k3.txt", "n 3\n1 2\n2 3\n1 3\n");
    let k3 = k3.to_str().unwrap();
    let pf = json(&run(&["pf", k3, "--m", "2", "--gamma", "0.06", "--order", "2"]));
    let est = &pf["result"]["ln_pf"];
    let exact = 3.18f64.ln();
    // ln 3 + (0.06 - 0.06^2/2): the next series term is 0.06^3/3 = 7.2e-5
    assert!((f(&est["value"]) - exact).abs() < 1e-4);
    assert!((f(&est["value"]) - (3f64.ln() + 0.0582)).abs() < 1e-15);
    assert!((f(&est["additive_bound"]) - 1.0 / (3.0 * (61.0f64 / 60.0).powi(2) * (1.0 / 60.0))).abs() < 1e-9);
    assert_eq!(pf["inputs"]["params"]["gamma"], "3/50");
    assert_eq!(pf["result"]["series_exact"], "291/5000");

    let oracle = json(&run(&["oracle", k3, "--m", "2", "--gamma", "0.06"]));
    assert_eq!(oracle["result"]["pf_exact"], "159/50");
    assert!((f(&oracle["result"]["ln_pf"]) - f(&est["value"])).abs() <= f(&est["additive_bound"]));
}

#[test]
fn pf_certificate_contains_oracle_value() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "g.txt", "n 6\n1 2\n2 3\n3 1\n4 5\n5 6\n1 4\n");
    let g = g.to_str().unwrap();
    for mode in ["exact", "float"] {
        let pf = json(&run(&["pf", g, "--m", "3", "--target-eps", "0.05", "--mode", mode]));
        let oracle = json(&run(&["oracle", g, "--m", "3"]));
        let est = &pf["result"]["ln_pf"];
        assert!(f(&est["additive_bound"]) <= 0.05);
        assert!((f(&oracle["result"]["ln_pf"]) - f(&est["value"])).abs() <= f(&est["additive_bound"]));
    }
}

#[test]
fn decide_on_empty_graph_is_not_many_dense() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "empty.txt", "n 8\n");
    let out = run(&["decide", g.to_str().unwrap(), "--m", "4", "--sigma", "0.5", "--eps", "0.25", "--mode", "float"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["result"]["verdict"], "NOT_MANY_DENSE");
    assert!(f(&v["result"]["estimate"]["additive_bound"]) <= 1.1f64.ln());
}

#[test]
fn decide_refuses_weak_orders() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "empty.txt", "n 8\n");
    let out = run(&["decide", g.to_str().unwrap(), "--m", "4", "--sigma", "0.5", "--eps", "0.25", "--order", "3"]);
    assert_eq!(out.status.code(), Some(5));
    assert!(out.stdout.is_empty());
}

#[test]
fn malformed_dimacs_is_a_parse_error_without_report() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "bad.col", "p edge 4 1\ne 1 9\n");
    let out = run(&["pf", g.to_str().unwrap(), "--m", "2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
}

#[test]
fn parameter_errors_use_their_own_exit_code() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "k3.txt", "n 3\n1 2\n2 3\n1 3\n");
    let g = g.to_str().unwrap();
    // gamma above the regime cap
    assert_eq!(run(&["pf", g, "--m", "2", "--gamma", "1/10"]).status.code(), Some(3));
    // m larger than n
    assert_eq!(run(&["pf", g, "--m", "5"]).status.code(), Some(3));
    // order and target are mutually exclusive
    assert_eq!(run(&["pf", g, "--m", "2", "--order", "2", "--target-eps", "0.1"]).status.code(), Some(3));
    // sigma + eps > 1
    assert_eq!(run(&["decide", g, "--m", "2", "--sigma", "0.9", "--eps", "0.2"]).status.code(), Some(3));
}

#[test]
fn oracle_cap_has_its_own_exit_code() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "g.txt", "n 6\n1 2\n");
    let out = run(&["oracle", g.to_str().unwrap(), "--m", "2", "--cap", "5"]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn exact_reports_are_reproducible() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "g.txt", "p edge 5 4\ne 1 2\ne 2 3\ne 3 4\ne 4 5\n");
    let g = g.to_str().unwrap();
    let args = ["density", g, "--m", "3", "--gamma", "1/20", "--order", "6", "--workers", "3"];
    let first = run(&args);
    let second = run(&args);
    assert_eq!(first.stdout, second.stdout);
    let report = json(&first);
    // the report alone is enough to rebuild the command line
    let inputs = &report["inputs"];
    assert_eq!(inputs["params"]["gamma"], "1/20");
    assert_eq!(inputs["order"], 6);
    assert_eq!(inputs["mode"], "exact");
    assert_eq!(inputs["graph"]["n"], 5);
    assert_eq!(inputs["graph"]["edges"].as_array().unwrap().len(), 4);
    assert!(report["result"]["series_exact"].as_str().unwrap().contains('/'));
}

#[test]
fn extract_finds_planted_clique() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "k4.txt", "n 8\n1 2\n1 3\n1 4\n2 3\n2 4\n3 4\n");
    let v = json(&run(&["extract", g.to_str().unwrap(), "--m", "4", "--mode", "float", "--workers", "2"]));
    assert_eq!(v["result"]["subset"], serde_json::json!([1, 2, 3, 4]));
    assert_eq!(f(&v["result"]["density"]), 1.0);
}

#[test]
fn audit_reports_constants_and_argmin() {
    let v = json(&run(&["audit", "--n", "5", "--m", "3", "--seed", "7", "--count", "200"]));
    let r = &v["result"];
    assert_eq!(r["passed"], true);
    assert!(f(&r["min_modulus"]) > 0.0);
    assert_eq!(r["argmin_sample"].as_array().unwrap().len(), 10);
    assert!((f(&r["constants"]["theta"]) - 0.4580097179).abs() < 1e-6);
    assert_eq!(v["inputs"]["seed"], 7);

    let exploratory = json(&run(&["audit", "--n", "5", "--m", "3", "--count", "50", "--radius", "0.9"]));
    assert!(exploratory["result"]["passed"].is_null());
}

#[test]
fn text_format_is_line_oriented() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "k3.txt", "n 3\n1 2\n2 3\n1 3\n");
    let out = run(&["oracle", g.to_str().unwrap(), "--m", "2", "--format", "text"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().any(|l| l == "result.pf_exact: 159/50"));
}
