use std::process::{Command, Output};

use serde_json::Value;

fn lagrangia(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lagrangia")).args(args).output().expect("binary runs")
}

fn json_file(path: &std::path::Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn has_betti(v: &Value, i: u64, d: i64, rank: u64) -> bool {
    v["betti"]["entries"]
        .as_array()
        .unwrap()
        .iter()
        .any(|e| e["i"] == i && e["d"] == d && e["rank"] == rank)
}

#[test]
fn reisner_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let out = lagrangia(&["reisner", "-o", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_file(&path);
    assert_eq!(v["hasse"]["hasse"], "1");
    assert_eq!(v["class"], "mu2");
    assert_eq!(v["degenerate"], true);
    assert!(has_betti(&v, 3, 6, 1));
    assert_eq!(v["cubics"].as_array().unwrap().len(), 10);
    assert_eq!(v["pfaffian"]["decision"], "NonPfaffian");
    assert_eq!(v["census"]["gf2"], 31);
}

#[test]
fn construct_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for p in [&a, &b] {
        let out = lagrangia(&["construct", "--seed", "4", "--field", "gf2", "-o", p.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let v = json_file(&a);
    assert_eq!(v["seed"], 4);
    assert_eq!(v["hilbert_function"], serde_json::json!([1, 6, 21, 46]));
    assert_eq!(v["quadric_free"], true);
    assert_eq!(v["jacobian_samples"].as_array().unwrap().len(), 50);
    assert!(v["moduli"].as_array().unwrap().len() >= 2);
}

#[test]
fn degenerate_construct_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("s0.json");
    let out = lagrangia(&["construct", "--seed", "0", "-o", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json_file(&p)["degenerate"], true);
}

#[test]
fn gf4_construct_has_the_same_betti_table() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("g.json");
    let out = lagrangia(&["construct", "--seed", "1", "--field", "gf4", "-o", p.to_str().unwrap()]);
    assert!(matches!(out.status.code(), Some(0) | Some(2)), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json_file(&p);
    assert_eq!(v["field"], "gf4");
    for (i, d, r) in [(0, 0, 1), (1, 3, 10), (2, 4, 15), (3, 5, 6), (3, 6, 1), (4, 6, 1)] {
        assert!(has_betti(&v, i, d, r));
    }
}

#[test]
fn empty_survey() {
    let out = lagrangia(&["survey", "--count", "0", "--field", "gf2"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["count"], 0);
    assert_eq!(v["mu2"], 0);
}

#[test]
fn verify_passes() {
    let out = lagrangia(&["verify"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["passed"], true);
    let names: Vec<&str> = v["checks"].as_array().unwrap().iter().map(|c| c["name"].as_str().unwrap()).collect();
    assert!(names.contains(&"chern_p7_336"));
    assert!(names.contains(&"reisner_pipeline"));
}

#[test]
fn numeric_subcommands() {
    let out = lagrangia(&["degree", "--space", "p7", "--d", "3"]);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["degree"], 9008);
    let out = lagrangia(&["hilbert", "--shape", "p5"]);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["coefficients"], serde_json::json!(["1", "0", "5"]));
    let out = lagrangia(&["pfaffian", "--n", "4", "--ell", "32", "--char", "0", "--gram", "1,0;0,1"]);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["result"]["decision"], "NonPfaffian");
    let out = lagrangia(&["pfaffian", "--n", "2", "--ell", "0", "--char", "2", "--dim", "1"]);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v["result"]["reason"].as_str().unwrap().contains("(c)"));
}

#[test]
fn usage_errors() {
    assert_eq!(lagrangia(&["frobnicate"]).status.code(), Some(64));
    assert_eq!(lagrangia(&["construct", "--seed", "1", "--field", "gf3"]).status.code(), Some(64));
    assert_eq!(lagrangia(&["construct", "--seed", "x"]).status.code(), Some(64));
    assert_eq!(lagrangia(&["pfaffian", "--n", "2", "--ell", "0", "--char", "2"]).status.code(), Some(64));
    assert_eq!(lagrangia(&["degree", "--space", "p6"]).status.code(), Some(64));
    assert_eq!(lagrangia(&["--help"]).status.code(), Some(0));
    assert_eq!(lagrangia(&["--version"]).status.code(), Some(0));
}
