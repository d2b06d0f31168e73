use std::path::Path;
use std::process::{Command, Output};

use lck_core::invariant::catalog_model;

fn lckcalc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lckcalc"))
        .args(args)
        .output()
        .expect("spawn lckcalc")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn write_model(dir: &Path, name: &str, body: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn catalog_list() {
    let o = lckcalc(&["catalog", "list"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    for name in ["torus4", "hopf-surface", "kodaira-surface"] {
        assert!(out.contains(name), "{out}");
    }
}

#[test]
fn verify_single_theorem() {
    let o = lckcalc(&["verify", "--model", "kodaira-surface", "--theorem", "T10"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("PASS b2 = 4 = 2*s1"));
}

#[test]
fn explain_lists_comparisons() {
    let o = lckcalc(&["verify", "--model", "hopf-surface", "--theorem", "T3", "--explain"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("statement:"), "{out}");
    assert!(out.contains("[ok]"), "{out}");
}

#[test]
fn torus_passes_every_suite() {
    let o = lckcalc(&["check", "--model", "torus4", "--suite", "all", "--chart", "flat"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("N/A"));
}

#[test]
fn vaisman_omega_prime_sign_fails() {
    let o = lckcalc(&["verify", "--model", "hopf-surface", "--theorem", "VAISMAN"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL"));
}

#[test]
fn identities_suite_passes_on_hopf() {
    let o = lckcalc(&["identities", "--model", "hopf-surface", "--chart", "hopf"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(!stdout(&o).contains("FAIL"));
}

#[test]
fn csv_is_deterministic() {
    let a = lckcalc(&["table", "--model", "kodaira-surface", "--format", "csv"]);
    let b = lckcalc(&["table", "--model", "kodaira-surface", "--format", "csv"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let out = stdout(&a);
    assert!(out.starts_with("quantity,k,p,q,value\n"));
    assert!(out.contains("b,2,,,4\n"));
    assert!(out.contains("s,1,,,2\n"));
}

#[test]
fn saved_model_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("kodaira.json");
    catalog_model("kodaira-surface").unwrap().save(&path).unwrap();
    let p = path.to_str().unwrap();
    let from_file = lckcalc(&["table", "--model", p, "--format", "csv"]);
    let from_catalog = lckcalc(&["table", "--model", "kodaira-surface", "--format", "csv"]);
    assert_eq!(from_file.status.code(), Some(0), "{}", stderr(&from_file));
    assert_eq!(from_file.stdout, from_catalog.stdout);
    let text = lckcalc(&["table", "--model", p]);
    assert!(stdout(&text).contains("lower-bound"), "{}", stdout(&text));
}

#[test]
fn rejects_non_antisymmetric_brackets() {
    let dir = tempfile::tempdir().unwrap();
    let p = write_model(
        dir.path(),
        "bad.json",
        r#"{"name":"bad","dim":4,
            "structure_constants":[[1,2,3,"1"],[2,1,3,"1"]],
            "J":[["0","-1","0","0"],["1","0","0","0"],["0","0","0","-1"],["0","0","1","0"]],
            "theta":["0","0","0","0"]}"#,
    );
    let o = lckcalc(&["table", "--model", &p]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("E-ANTISYM"), "{}", stderr(&o));
}

#[test]
fn rejects_non_complex_structure() {
    let dir = tempfile::tempdir().unwrap();
    let p = write_model(
        dir.path(),
        "bad.json",
        r#"{"name":"bad","dim":4,"structure_constants":[],
            "J":[["0","1","0","0"],["1","0","0","0"],["0","0","0","-1"],["0","0","1","0"]],
            "theta":["0","0","0","0"]}"#,
    );
    let o = lckcalc(&["check", "--model", &p]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("E-CPLX"), "{}", stderr(&o));
}

#[test]
fn input_errors_exit_two() {
    for args in [
        &["table", "--model", "k3"][..],
        &["verify", "--model", "hopf-surface", "--theorem", "T99"],
        &["table", "--model", "/nonexistent/model.json"],
        &["identities", "--model", "torus4", "--chart", "no-such-chart"],
    ] {
        let o = lckcalc(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", stderr(&o));
        assert!(o.stdout.is_empty());
    }
}
