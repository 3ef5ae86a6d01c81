use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

const G1: &str = "p max 4 4\nn 1 s\nn 4 t\na 1 2\na 1 3\na 2 4\na 3 4\n";
const SM1: &str = "2\n1 2\n2 1\n2 1\n1 2\n";
const CHAIN: &str = r#"{"orders": [[1, 2, 3]], "members": [[1], [2], [3]]}"#;

fn kdiverse(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kdiverse")).args(args).output().unwrap()
}

fn file(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    fs::write(&path, text).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn mincut_sum() {
    let dir = TempDir::new().unwrap();
    let g1 = file(&dir, "g1.dimacs", G1);
    let v = json(&kdiverse(&["mincut", "--k", "2", "--measure", "sum", s(&g1)]));
    assert_eq!(v["diversity"], 4);
    assert_eq!(v["q"], 2);
    assert_eq!(v["backend"], "cut");
    let cuts = v["solutions"].as_array().unwrap();
    assert_eq!(cuts.len(), 2);
    assert!(cuts.iter().all(|c| c.as_array().unwrap().len() == 2));
    let one = json(&kdiverse(&["mincut", "--k", "1", "--backend", "mcf", s(&g1)]));
    assert_eq!(one["diversity"], 0);
}

#[test]
fn sm_cov() {
    let dir = TempDir::new().unwrap();
    let sm1 = file(&dir, "sm1.pref", SM1);
    let v = json(&kdiverse(&["sm", "--k", "2", "--measure", "cov", s(&sm1)]));
    assert_eq!(v["diversity"], 4);
    assert_eq!(v["problem"], "sm");
}

#[test]
fn lattice_and_output_file() {
    let dir = TempDir::new().unwrap();
    let chain = file(&dir, "chain.json", CHAIN);
    let out = dir.path().join("report.json");
    let status = kdiverse(&["lattice", "--k", "2", "--output", s(&out), s(&chain)]);
    assert!(status.status.success());
    let v: Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["diversity"], 2);
}

#[test]
fn runs_are_deterministic() {
    let dir = TempDir::new().unwrap();
    let g1 = file(&dir, "g1.dimacs", G1);
    let mut a = json(&kdiverse(&["mincut", "--k", "3", "--measure", "cov", s(&g1)]));
    let mut b = json(&kdiverse(&["mincut", "--k", "3", "--measure", "cov", s(&g1)]));
    a["stats"]["solve_ms"] = Value::Null;
    b["stats"]["solve_ms"] = Value::Null;
    assert_eq!(a, b);
}

#[test]
fn table_measure() {
    let dir = TempDir::new().unwrap();
    let g1 = file(&dir, "g1.dimacs", G1);
    let table = file(&dir, "phi.txt", "0\n1\n4\n");
    let measure = format!("table:{}", s(&table));
    let v = json(&kdiverse(&["mincut", "--k", "2", "--measure", &measure, s(&g1)]));
    assert_eq!(v["backend"], "mcf");
    assert_eq!(v["measure"], "table");
    let conflict = kdiverse(&["mincut", "--k", "2", "--measure", &measure, "--backend", "cut", s(&g1)]);
    assert_eq!(conflict.status.code(), Some(3));
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    let bad = file(&dir, "bad.dimacs", "p max 2 1\nn 1 s\nn 2 t\na 1 9\n");
    let out = kdiverse(&["mincut", "--k", "2", s(&bad)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains(":4:"));
    let g1 = file(&dir, "g1.dimacs", G1);
    assert_eq!(kdiverse(&["mincut", "--k", "0", s(&g1)]).status.code(), Some(3));
    assert_eq!(kdiverse(&["mincut", "--k", "2", "--measure", "abs", s(&g1)]).status.code(), Some(2));
    assert_eq!(kdiverse(&["mincut", "--k", "2", s(&dir.path().join("missing"))]).status.code(), Some(2));
    let bad_table = file(&dir, "phi.txt", "0\n2\n1\n");
    let measure = format!("table:{}", s(&bad_table));
    assert_eq!(kdiverse(&["mincut", "--k", "2", "--measure", &measure, s(&g1)]).status.code(), Some(2));
}

#[test]
fn oracle_and_selftest() {
    let dir = TempDir::new().unwrap();
    let g1 = file(&dir, "g1.dimacs", G1);
    let o = json(&kdiverse(&["oracle", "mincut", "--k", "2", "--measure", "sum", s(&g1)]));
    assert_eq!(o["optimum"], 4);
    assert_eq!(o["feasible"], 4);
    let t = json(&kdiverse(&["selftest", "mincut", "--k", "2", s(&g1)]));
    assert_eq!(t["agree"], true);
    assert_eq!(t["oracle"], 4);
    let sm1 = file(&dir, "sm1.pref", SM1);
    let t = json(&kdiverse(&["selftest", "sm", "--k", "3", "--measure", "cov", s(&sm1)]));
    assert_eq!(t["mcf"], 4);
    assert_eq!(t["cut"], 4);
}

#[test]
fn dumps() {
    let dir = TempDir::new().unwrap();
    let g1 = file(&dir, "g1.dimacs", G1);
    let (mcf, cut) = (dir.path().join("net.json"), dir.path().join("layers.dot"));
    let out = kdiverse(&["mincut", "--k", "2", "--dump-mcf", s(&mcf), "--dump-cut", s(&cut), s(&g1)]);
    assert!(out.status.success());
    let net: Value = serde_json::from_str(&fs::read_to_string(&mcf).unwrap()).unwrap();
    assert!(net["arcs"].as_array().unwrap().len() > 0);
    assert!(fs::read_to_string(&cut).unwrap().starts_with("digraph"));
}
