//! The `planred` binary end to end: files in, files and exit codes out.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn planred(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_planred"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("spawn planred")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn write(dir: &Path, name: &str, text: &str) {
    fs::write(dir.join(name), text).unwrap();
}

#[test]
fn counts_three_overlapping_clauses() {
    let d = tempfile::tempdir().unwrap();
    write(d.path(), "f.cnf", "p cnf 4 3\n1 2 3 0\n1 3 4 0\n2 3 4 0\n");
    let o = planred(&["count", "sat", "f.cnf"], d.path());
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().any(|l| l == "count=12"), "{}", stdout(&o));
}

#[test]
fn planarize_writes_target_and_manifest() {
    let d = tempfile::tempdir().unwrap();
    write(d.path(), "in.cnf", "p cnf 4 4\n1 3 0\n2 4 0\n1 4 0\n2 3 0\n");
    let o = planred(
        &["reduce", "--chain", "planarize", "in.cnf", "-o", "out.cnf", "--trace", "t.txt", "--emit-dot", "out.dot"],
        d.path(),
    );
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let manifest = fs::read_to_string(d.path().join("out.cnf.manifest")).unwrap();
    assert!(manifest.contains("multiplier=1\n"));
    assert!(manifest.contains("offset=0\n"));
    assert!(fs::read_to_string(d.path().join("t.txt")).unwrap().contains("crossings 1"));
    assert!(fs::read_to_string(d.path().join("out.dot")).unwrap().starts_with("graph G {"));
    let a = planred(&["count", "sat", "in.cnf"], d.path());
    let b = planred(&["count", "sat", "out.cnf"], d.path());
    let count = |o: &Output| stdout(o).lines().find(|l| l.starts_with("count=")).map(str::to_string);
    assert_eq!(count(&a), count(&b));
}

#[test]
fn vertex_cover_chain_reports_k() {
    let d = tempfile::tempdir().unwrap();
    write(d.path(), "in.cnf", "p cnf 3 1\n1 2 3 0\n");
    let o = planred(&["reduce", "--chain", "red1,mono_to_vertex_cover", "in.cnf", "-o", "g.graph"], d.path());
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(fs::read_to_string(d.path().join("g.graph.manifest")).unwrap().contains("k=11\n"));
    let o = planred(&["count", "vc", "g.graph", "--k", "11", "--exact"], d.path());
    assert!(stdout(&o).contains("count=6\n"));
}

#[test]
fn ilp_chain_writes_a_feasible_point() {
    let d = tempfile::tempdir().unwrap();
    write(d.path(), "in.cnf", "p cnf 1 1\n1 0\n");
    let o = planred(&["reduce", "--chain", "sat_to_ilp", "in.cnf", "-o", "out.ilp"], d.path());
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let point = fs::read_to_string(d.path().join("out.ilp.point")).unwrap();
    assert!(point.starts_with("x "));
    let ilp = planred::setgraph::parse_ilp(&fs::read_to_string(d.path().join("out.ilp")).unwrap()).unwrap();
    let mut v = planred::formula::Assignment::all(ilp.num_vars(), false);
    for t in point.split_whitespace().skip(1) {
        v.set(t.parse().unwrap(), true);
    }
    assert!(ilp.is_feasible(&v).unwrap());
}

#[test]
fn verify_gadgets_and_self_test() {
    let d = tempfile::tempdir().unwrap();
    let o = planred(&["verify", "gadgets"], d.path());
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("summary pass=8 fail=0 skip=0"));
    let o = planred(&["verify", "gadgets", "--inject-fault"], d.path());
    assert_eq!(o.status.code(), Some(1));
    let o = planred(&["verify", "self-test"], d.path());
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn verify_default_holds() {
    let d = tempfile::tempdir().unwrap();
    let o = planred(&["verify", "default", "--seed", "7"], d.path());
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let again = planred(&["verify", "default", "--seed", "7"], d.path());
    assert_eq!(stdout(&o), stdout(&again));
}

#[test]
fn export_dot_pins_layout() {
    let d = tempfile::tempdir().unwrap();
    write(d.path(), "f.cnf", "p cnf 3 1\n1 -2 3 0\n");
    let o = planred(&["export-dot", "f.cnf", "--layout"], d.path());
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("pos=\""));
}

#[test]
fn exit_codes_are_distinct() {
    let d = tempfile::tempdir().unwrap();
    write(d.path(), "f.cnf", "p cnf 3 1\n1 2 3 0\n");
    write(d.path(), "bad.cnf", "p cnf 3 1\n1 2 x 0\n");
    write(d.path(), "mixed.cnf", "p cnf 3 2\n1 -2 3 0\n2 3 0\n");
    let code = |args: &[&str]| planred(args, d.path()).status.code();
    assert_eq!(code(&["count"]), Some(2));
    assert_eq!(code(&["reduce", "--chain", "no_such_stage", "f.cnf", "-o", "x"]), Some(2));
    assert_eq!(code(&["count", "sat", "bad.cnf"]), Some(3));
    assert_eq!(code(&["reduce", "--chain", "red1,red1", "f.cnf", "-o", "x.cnf"]), Some(4));
    assert_eq!(code(&["count", "sat", "f.cnf", "--max-nodes", "1"]), Some(5));
    assert_eq!(code(&["count", "sat", "missing.cnf"]), Some(6));
    assert_eq!(code(&["reduce", "--chain", "red1", "mixed.cnf", "-o", "x.cnf", "--problem", "ex1"]), Some(7));
}
