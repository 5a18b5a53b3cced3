use std::path::PathBuf;
use std::process::{Command, Output};

fn corpus(name: &str) -> String {
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus").join(name);
    root.to_string_lossy().into_owned()
}

fn clarith(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_clarith")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn checks_the_theory_proof() {
    let o = clarith(&["check", &corpus("numerals2.cla11"), "--theory", &corpus("lin-log-poly.cfg"), "--extended"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("verdict: accepted"));
}

#[test]
fn theory_proofs_need_a_theory() {
    assert_eq!(clarith(&["check", &corpus("numerals2.cla11")]).status.code(), Some(2));
}

#[test]
fn rejected_proof_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.cl12");
    let src = std::fs::read_to_string(corpus("numerals2.cl12")).unwrap().replace("A1, y1", "A0, y1");
    std::fs::write(&path, src).unwrap();
    let o = clarith(&["check", path.to_str().unwrap(), "--format", "json"]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["verdict"], "rejected");
}

#[test]
fn parse_errors_and_missing_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.cl12");
    std::fs::write(&path, "line 1: |o- 0 = ;; Wait()\n").unwrap();
    assert_eq!(clarith(&["check", path.to_str().unwrap()]).status.code(), Some(4));
    assert_eq!(clarith(&["check", "missing.cl12"]).status.code(), Some(3));
    assert_eq!(clarith(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn play_addition_from_a_script() {
    let env = format!("script:{}", corpus("add.env"));
    let o = clarith(&["play", "call u . call v . cex z . z = u+v", "--agent", "add", "--env", &env]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("T: #100010"));
    assert!(out.contains("verdict: T-won"));
    assert!(out.contains("space: "));
}

#[test]
fn play_random_is_deterministic() {
    let args = ["play", "call u . call v . cex z . z = u+v", "--agent", "add", "--env", "random:7", "--runs", "8", "--jobs", "4"];
    let a = clarith(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(stdout(&a), stdout(&clarith(&args)));
    assert!(stdout(&a).contains("won: 8/8"));
}

#[test]
fn losing_agent_exits_one() {
    let o = clarith(&["play", "cex z . z = 0''", "--agent", "numeral:3"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn eval_three_ways() {
    assert_eq!(clarith(&["eval", "all x . x + 0 = x"]).status.code(), Some(0));
    assert_eq!(clarith(&["eval", "0 = 0'"]).status.code(), Some(1));
    assert_eq!(clarith(&["eval", "ex x . x * x = 0'' ", "--blind-bound", "100"]).status.code(), Some(5));
    assert_eq!(clarith(&["eval", "cex x . x = 0"]).status.code(), Some(4));
}

#[test]
fn regularity_of_the_broken_triple() {
    let o = clarith(&["regularity", "B3,B1^1,linear{x}", "--format", "json"]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["conditions"][2]["name"], "dt3");
    assert_eq!(v["conditions"][2]["status"], "falsified");
}

#[test]
fn regularity_of_a_theory_file() {
    let o = clarith(&["regularity", &corpus("lin-log-poly.cfg")]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}
