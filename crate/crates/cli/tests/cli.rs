use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use crystal_cli::GraphDocument;
use tempfile::TempDir;

fn crystal(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_crystal"))
        .args(args)
        .env_remove("CRYSTAL_BUDGET")
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn gen(dir: &Path, name: &str, hw: &str, method: &str) -> PathBuf {
    let p = dir.join(name);
    let o = crystal(&[
        "gen",
        "--gcm",
        "b2",
        "--hw",
        hw,
        "--method",
        method,
        "--out",
        p.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    p
}

fn doc(p: &Path) -> GraphDocument {
    GraphDocument::from_json(&fs::read_to_string(p).unwrap()).unwrap()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn gen_sizes() {
    let t = TempDir::new().unwrap();
    assert_eq!(doc(&gen(t.path(), "p.json", "1,1", "pbw")).vertices.len(), 16);
    assert_eq!(doc(&gen(t.path(), "a.json", "0,0", "axioms")).vertices.len(), 1);
    assert_eq!(doc(&gen(t.path(), "b.json", "3,0", "axioms")).vertices.len(), 20);

    let o = crystal(&["gen", "--gcm", "b3", "--hw", "1,0,0", "--method", "axioms"]);
    assert_eq!(code(&o), 0);
    let d = GraphDocument::from_json(&stdout(&o)).unwrap();
    assert_eq!(d.vertices.len(), 7);
    assert_eq!(d.index_set, vec![1, 2, 3]);
}

#[test]
fn gen_rejects_bad_combinations() {
    assert_eq!(
        code(&crystal(&["gen", "--gcm", "b3", "--hw", "1,0,0", "--method", "pbw"])),
        2
    );
    assert_eq!(code(&crystal(&["gen", "--gcm", "b2", "--hw", "1"])), 2);
    assert_eq!(code(&crystal(&["gen", "--gcm", "e8", "--hw", "1,1"])), 2);
    assert_eq!(code(&crystal(&["gen", "--hw", "1,1", "--method", "magic"])), 2);
}

#[test]
fn gen_custom_matrix() {
    let t = TempDir::new().unwrap();
    let m = t.path().join("a2.json");
    fs::write(&m, "[[2,-1],[-1,2]]").unwrap();
    let gcm = format!("custom:{}", s(&m));
    let o = crystal(&["gen", "--gcm", &gcm, "--hw", "1,1", "--method", "axioms"]);
    assert_eq!(code(&o), 0);
    assert_eq!(GraphDocument::from_json(&stdout(&o)).unwrap().vertices.len(), 8);
}

#[test]
fn budget_exit_code() {
    for method in ["pbw", "axioms"] {
        let o = Command::new(env!("CARGO_BIN_EXE_crystal"))
            .args(["gen", "--hw", "3,3", "--method", method])
            .env("CRYSTAL_BUDGET", "10")
            .output()
            .unwrap();
        assert_eq!(code(&o), 3, "{method}");
    }
    let o = Command::new(env!("CARGO_BIN_EXE_crystal"))
        .args(["gen", "--hw", "1,1"])
        .env("CRYSTAL_BUDGET", "lots")
        .output()
        .unwrap();
    assert_eq!(code(&o), 2);
}

#[test]
fn check_pass_and_mutation() {
    let t = TempDir::new().unwrap();
    let p = gen(t.path(), "g.json", "1,1", "pbw");
    let report = t.path().join("r.json");
    let o = crystal(&["check", s(&p), "--report", s(&report), "--hw", "1,1"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let r: serde_json::Value = serde_json::from_str(&fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(r["pass"], true);
    assert_eq!(r["violations"], serde_json::json!([]));

    let mut d = doc(&p);
    d.edges.remove(3);
    let m = t.path().join("m.json");
    fs::write(&m, d.to_json()).unwrap();
    let o = crystal(&["check", s(&m), "--report", s(&report)]);
    assert_eq!(code(&o), 1);
    let r: serde_json::Value = serde_json::from_str(&fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(r["pass"], false);
    assert!(!r["violations"].as_array().unwrap().is_empty());

    let o = crystal(&["check", s(&p), "--hw", "2,1"]);
    assert_eq!(code(&o), 1);
}

#[test]
fn check_input_errors() {
    let t = TempDir::new().unwrap();
    let bad = t.path().join("bad.json");
    fs::write(&bad, "{ not json").unwrap();
    assert_eq!(code(&crystal(&["check", s(&bad)])), 2);
    assert_eq!(code(&crystal(&["check", s(&t.path().join("missing.json"))])), 2);
}

#[test]
fn iso_cases() {
    let t = TempDir::new().unwrap();
    let p = gen(t.path(), "p.json", "1,1", "pbw");
    let a = gen(t.path(), "a.json", "1,1", "axioms");
    let q = gen(t.path(), "q.json", "3,0", "pbw");
    let map = t.path().join("map.json");

    let o = crystal(&["iso", s(&p), s(&p), "--out", s(&map)]);
    assert_eq!(code(&o), 0);
    let pairs: Vec<[u64; 2]> = serde_json::from_str(&fs::read_to_string(&map).unwrap()).unwrap();
    assert!(pairs.iter().all(|[x, y]| x == y));

    let o = crystal(&["iso", s(&a), s(&p), "--out", s(&map)]);
    assert_eq!(code(&o), 0);
    let pairs: Vec<[u64; 2]> = serde_json::from_str(&fs::read_to_string(&map).unwrap()).unwrap();
    assert_eq!(pairs.len(), 16);

    assert_eq!(code(&crystal(&["iso", s(&p), s(&q)])), 1);

    let mut d = doc(&p);
    d.edges.pop();
    let m = t.path().join("m.json");
    fs::write(&m, d.to_json()).unwrap();
    assert_eq!(code(&crystal(&["iso", s(&m), s(&p)])), 2);
}

#[test]
fn iso_keeps_original_ids() {
    let t = TempDir::new().unwrap();
    let p = gen(t.path(), "p.json", "1,0", "pbw");
    let mut d = doc(&p);
    let shift = |id: u64| 100 + 3 * id;
    for v in &mut d.vertices {
        v.id = shift(v.id);
    }
    for e in &mut d.edges {
        e.from = shift(e.from);
        e.to = shift(e.to);
    }
    d.max = d.max.map(shift);
    let r = t.path().join("r.json");
    fs::write(&r, d.to_json()).unwrap();
    let map = t.path().join("map.json");
    assert_eq!(code(&crystal(&["iso", s(&p), s(&r), "--out", s(&map)])), 0);
    let pairs: Vec<[u64; 2]> = serde_json::from_str(&fs::read_to_string(&map).unwrap()).unwrap();
    assert!(pairs.iter().all(|&[x, y]| y == shift(x)));
}

#[test]
fn export_dot() {
    let t = TempDir::new().unwrap();
    let p = gen(t.path(), "p.json", "1,1", "pbw");
    let one = crystal(&["export-dot", s(&p)]);
    assert_eq!(code(&one), 0);
    let dot = stdout(&one);
    assert!(dot.starts_with("digraph crystal {"));
    assert_eq!(dot.lines().filter(|l| l.contains("[label=\"((")).count(), 16);
    assert!(dot.contains("penwidth=3"));
    assert_eq!(stdout(&crystal(&["export-dot", s(&p)])), dot);

    let out = t.path().join("g.dot");
    assert_eq!(code(&crystal(&["export-dot", s(&p), "--out", s(&out)])), 0);
    assert_eq!(fs::read_to_string(&out).unwrap(), dot);

    let single = gen(t.path(), "z.json", "0,0", "pbw");
    let dot = stdout(&crystal(&["export-dot", s(&single)]));
    assert!(!dot.contains("->"));

    let bad = t.path().join("bad.json");
    fs::write(&bad, "[]").unwrap();
    assert_eq!(code(&crystal(&["export-dot", s(&bad)])), 2);
}

#[test]
fn verify_suite_table() {
    let t = TempDir::new().unwrap();
    let json = t.path().join("v.json");
    let o = crystal(&["verify-paper", "--max-hw", "2", "--max-box", "3", "--json", s(&json)]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).lines().skip(1).all(|l| l.ends_with("PASS")));
    let reports: serde_json::Value = serde_json::from_str(&fs::read_to_string(&json).unwrap()).unwrap();
    assert!(reports.as_array().unwrap().len() >= 10);

    assert_eq!(code(&crystal(&["verify-paper", "--max-hw", "0", "--max-box", "1"])), 0);

    let o = crystal(&["verify-paper", "--max-hw", "0", "--max-box", "3", "--inject-bug"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("FAIL"));
}

#[test]
fn verify_suite_defaults() {
    let o = crystal(&["verify-paper"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
}
