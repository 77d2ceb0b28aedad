//! End-to-end runs of the binary: exit codes, output files, and certificates
//! re-checked from stdout.

use std::path::Path;
use std::process::{Command, Output};

use hyperturan::hypercore::io::{load, save};
use hyperturan::numbers::GoodSetViolation;
use hyperturan::patterns::{generate_i, generate_q, ICopy, QEmbedding};
use serde_json::Value;
use tempfile::TempDir;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hyperturan"))
        .args(args)
        .env_remove("HYPERTURAN_BUDGET")
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("stdout is not JSON ({e}): {}", String::from_utf8_lossy(&out.stdout))
    })
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn modular_construction_roundtrip() {
    let dir = TempDir::new().unwrap();
    let file = dir.path().join("mod.json");
    let out = run(&["construct", "modular", "--k", "5", "--p", "7", "--out", path_str(&file), "--verify"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let h = load(&file).unwrap();
    assert_eq!(h.m(), 686);
    let check = run(&["check", "q-free", "--pattern", "qkr:5:3", "--input", path_str(&file)]);
    assert_eq!(code(&check), 0);
    let dset = run(&["check", "dset", "--input", path_str(&file)]);
    assert_eq!(code(&dset), 0, "{}", String::from_utf8_lossy(&dset.stderr));
}

#[test]
fn split_requires_valid_parameters() {
    let out = run(&["construct", "split", "--n", "9", "--k", "5", "--r", "3"]);
    assert_eq!(code(&out), 3);
    let dir = TempDir::new().unwrap();
    let file = dir.path().join("split.hg");
    let ok = run(&["construct", "split", "--n", "10", "--k", "4", "--r", "3", "--out", path_str(&file), "--verify"]);
    assert_eq!(code(&ok), 0, "{}", String::from_utf8_lossy(&ok.stderr));
    assert!(load(&file).unwrap().m() > 0);
}

#[test]
fn q_violation_certificate_validates() {
    let dir = TempDir::new().unwrap();
    let file = dir.path().join("q.hg");
    let h = generate_q(4, 3).unwrap();
    save(&h, &file).unwrap();
    let out = run(&["check", "q-free", "--pattern", "qkr:4:3", "--input", path_str(&file)]);
    assert_eq!(code(&out), 2);
    let cert = QEmbedding::from_json(&stdout_json(&out)).unwrap();
    cert.validate(&h).unwrap();
}

#[test]
fn i_violation_certificate_validates() {
    let dir = TempDir::new().unwrap();
    let file = dir.path().join("i.hg");
    let h = generate_i(3, 1).unwrap();
    save(&h, &file).unwrap();
    let out = run(&["check", "i-free", "--pattern", "ik:3:1", "--input", path_str(&file)]);
    assert_eq!(code(&out), 2);
    ICopy::from_json(&stdout_json(&out)).unwrap().validate(&h).unwrap();
    let clean = run(&["check", "i-free", "--pattern", "ik:3:0", "--input", path_str(&file)]);
    assert_eq!(code(&clean), 0);
}

#[test]
fn goodset_checks() {
    let bad = run(&["check", "goodset", "--p", "7", "--k", "3", "--set", "1,2,3"]);
    assert_eq!(code(&bad), 2);
    let v = GoodSetViolation::from_json(&stdout_json(&bad)).unwrap();
    v.validate(Some(&[1, 2, 3])).unwrap();
    let good = run(&["check", "goodset", "--p", "5", "--k", "3", "--set", "0,1"]);
    assert_eq!(code(&good), 0);
    let not_prime = run(&["check", "goodset", "--p", "9", "--k", "3", "--set", "0"]);
    assert_eq!(code(&not_prime), 3);
}

#[test]
fn ap_free_check() {
    let bad = run(&["check", "ap-free", "--n", "9", "--k", "3", "--set", "1,5,9"]);
    assert_eq!(code(&bad), 2);
    assert_eq!(stdout_json(&bad)["terms"], serde_json::json!([1, 5, 9]));
    assert_eq!(code(&run(&["check", "ap-free", "--n", "9", "--k", "3", "--set", "1,2,4"])), 0);
}

#[test]
fn searches_report_known_values() {
    let p = stdout_json(&run(&["search", "packing", "--n", "7", "--r", "3", "--t", "2", "--exact"]));
    assert_eq!(p["edges"].as_array().unwrap().len(), 7);
    let s = stdout_json(&run(&["search", "goodset", "--p", "13", "--k", "3", "--exact"]));
    assert_eq!(s["provenance"], "exact");
    let a = stdout_json(&run(&["search", "apfree", "--n", "9", "--k", "3"]));
    assert_eq!(a["A"].as_array().unwrap().len(), 5);
    let t = stdout_json(&run(&["search", "turan", "--n", "7", "--k", "3", "--forbid", "ik:3:2"]));
    assert_eq!(t["max_edges"], 7);
}

#[test]
fn budget_exhaustion_exits_4() {
    let out = run(&["--budget", "10", "search", "goodset", "--p", "101", "--k", "3", "--exact"]);
    assert_eq!(code(&out), 4);
    let env = Command::new(env!("CARGO_BIN_EXE_hyperturan"))
        .args(["search", "turan", "--n", "7", "--k", "3", "--forbid", "qkr:3:3"])
        .env("HYPERTURAN_BUDGET", "5")
        .output()
        .unwrap();
    assert_eq!(code(&env), 4);
}

#[test]
fn tables_write_csv() {
    let dir = TempDir::new().unwrap();
    let file = dir.path().join("growth.csv");
    let out = run(&["table", "modular-growth", "--k", "5", "--primes", "7,11", "--out", path_str(&file)]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let csv = std::fs::read_to_string(&file).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "n,k,param,edges,reference");
    assert_eq!(lines.len(), 3);
    assert!(lines[1].starts_with("35,5,"));
    let empty = run(&["table", "split-growth", "--k", "4", "--r", "3", "--ns"]);
    assert_eq!(code(&empty), 0);
    assert_eq!(String::from_utf8_lossy(&empty.stdout).trim(), "n,k,param,edges,reference");
}

#[test]
fn audit_and_usage_errors() {
    let dir = TempDir::new().unwrap();
    let file = dir.path().join("i.hg");
    save(&generate_i(4, 3).unwrap(), &file).unwrap();
    assert_eq!(code(&run(&["check", "audit", "--input", path_str(&file)])), 2);
    assert_eq!(code(&run(&["frobnicate"])), 3);
    assert_eq!(code(&run(&["--help"])), 0);
    assert_eq!(code(&run(&["check", "q-free", "--pattern", "nope:1", "--input", path_str(&file)])), 3);
    let missing = dir.path().join("missing.hg");
    assert_eq!(code(&run(&["check", "audit", "--input", path_str(&missing)])), 5);
}

#[test]
fn thread_count_does_not_change_output() {
    let one = run(&["--threads", "1", "search", "turan", "--n", "6", "--k", "3", "--forbid", "qkr:3:3"]);
    let four = run(&["--threads", "4", "search", "turan", "--n", "6", "--k", "3", "--forbid", "qkr:3:3"]);
    assert_eq!(code(&one), 0);
    assert_eq!(one.stdout, four.stdout);
}
