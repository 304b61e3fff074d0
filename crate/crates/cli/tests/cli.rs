use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn ccmotion(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ccmotion"))
        .args(args)
        .current_dir(dir)
        .env_remove("CCMOTION_CAP")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn johnson_is_exceptional() {
    let dir = tempfile::tempdir().unwrap();
    assert!(ccmotion(dir.path(), &["gen", "johnson", "7", "2", "-o", "t7.ccf"]).status.success());
    let o = ccmotion(dir.path(), &["certify", "t7.ccf"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("Exceptional(Johnson"));
    let o = ccmotion(dir.path(), &["--format", "json", "certify", "t7.ccf"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["verdict"]["kind"], "Exceptional");
    assert!(v["input_hash"].as_str().unwrap().len() == 64);
}

#[test]
fn hamming_exact_motion() {
    let dir = tempfile::tempdir().unwrap();
    ccmotion(dir.path(), &["gen", "hamming", "2", "3", "-o", "h.ccf"]);
    let o = ccmotion(dir.path(), &["motion", "h.ccf", "--exact"]);
    assert_eq!(stdout(&o).trim(), "6");
}

#[test]
fn pairing_violation_exits_1() {
    let dir = tempfile::tempdir().unwrap();
    // (0,1) reverses to 2 but (0,2) of the same color reverses to 1
    std::fs::write(dir.path().join("broken.ccf"), "ccf 1\nn=3 r=3\n0 1 1\n2 0 1\n1 1 0\n").unwrap();
    let o = ccmotion(dir.path(), &["check", "broken.ccf"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("pairing undefined"));
}

#[test]
fn caps_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(ccmotion(dir.path(), &["--cap", "10", "gen", "johnson", "7", "2"]).status.code(), Some(2));
    ccmotion(dir.path(), &["gen", "paley", "13", "-o", "p.ccf"]);
    let o = Command::new(env!("CARGO_BIN_EXE_ccmotion"))
        .args(["check", "p.ccf"])
        .current_dir(dir.path())
        .env("CCMOTION_CAP", "5")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn stored_certificates_audit() {
    let dir = tempfile::tempdir().unwrap();
    ccmotion(dir.path(), &["gen", "paley", "13", "-o", "p.ccf"]);
    let o = ccmotion(dir.path(), &["certify", "p.ccf", "--json"]);
    std::fs::write(dir.path().join("p.json"), o.stdout).unwrap();
    let ok = ccmotion(dir.path(), &["certify", "p.ccf", "--audit", "p.json"]);
    assert_eq!(ok.status.code(), Some(0), "{}", String::from_utf8_lossy(&ok.stderr));
    let relabeled = ccmotion(dir.path(), &["--seed", "7", "certify", "p.ccf", "--audit", "p.json"]);
    assert_eq!(relabeled.status.code(), Some(1));
}

#[test]
fn oracle_comparison_passes_on_paley() {
    let dir = tempfile::tempdir().unwrap();
    ccmotion(dir.path(), &["gen", "paley", "13", "-o", "p.ccf"]);
    let o = ccmotion(dir.path(), &["certify", "p.ccf", "--oracle", "bundle"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(!dir.path().join("bundle").exists());
}

#[test]
fn analysis_commands_emit_json() {
    let dir = tempfile::tempdir().unwrap();
    ccmotion(dir.path(), &["gen", "triangular", "11", "-o", "t11.ccf"]);
    for args in [
        vec!["analyze", "t11.ccf"],
        vec!["wl", "t11.ccf"],
        vec!["distinguish", "t11.ccf"],
        vec!["spectrum", "t11.ccf"],
        vec!["spectrum", "t11.ccf", "--colors", "1,2"],
        vec!["geometry", "t11.ccf", "--color", "1", "--m", "2"],
        vec!["motion", "t11.ccf"],
    ] {
        let mut full = vec!["--format", "json"];
        full.extend(&args);
        let o = ccmotion(dir.path(), &full);
        assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
        let _: Value = serde_json::from_str(&stdout(&o)).unwrap();
    }
    let o = ccmotion(dir.path(), &["--format", "json", "geometry", "t11.ccf", "--color", "1", "--m", "2"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["metsch"], true);
    assert_eq!(v["lines"].as_array().unwrap().len(), 11);
    assert_eq!(v["root_graph"]["n"], 11);
}

#[test]
fn output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    ccmotion(dir.path(), &["gen", "line", "petersen", "-o", "lp.ccf"]);
    let a = ccmotion(dir.path(), &["--seed", "3", "certify", "lp.ccf", "--json"]);
    let b = ccmotion(dir.path(), &["--seed", "3", "certify", "lp.ccf", "--json"]);
    assert_eq!(a.stdout, b.stdout);
}
