use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hilbinv"))
        .args(args)
        .env_remove("JOBS")
        .env("COLOR", "never")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn scan_single_n() {
    let o = run(&["scan", "--min-n", "3", "--max-n", "3", "--mode", "full"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "3,1\n");
}

#[test]
fn scan_rejects_empty_range() {
    let o = run(&["scan", "--min-n", "5", "--max-n", "4"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(!o.stderr.is_empty());
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(run(&["walls"]).status.code(), Some(1));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(run(&["walls", "--n", "1"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn scan_labels_extension() {
    let o = run(&["scan", "--min-n", "199", "--max-n", "202", "--mode", "full"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "199,1\n200,1\n201,1,extension\n202,1,extension\n"
    );
}

#[test]
fn walls_json() {
    let o = run(&["walls", "--n", "200", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["C_n"], 1);
    let walls = v["walls"].as_array().unwrap();
    assert_eq!(walls.len(), 1);
    assert_eq!(walls[0]["X"], "797");
    assert_eq!(walls[0]["Y"], "1");
    assert_eq!(walls[0]["slope"], "1/797");
}

#[test]
fn walls_small_n() {
    let o = run(&["walls", "--n", "3", "--format", "csv"]);
    assert_eq!(
        stdout(&o),
        "rho,alpha,X,Y,slope,a_r,a_c,a_s\n-1,1,9,1,1/9,2,-1,5\n"
    );
    let o = run(&["walls", "--n", "2", "--format", "json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["walls"][0]["X"], "5");
}

#[test]
fn json_round_trip() {
    for args in [
        &["walls", "--n", "17", "--format", "json"][..],
        &["sigma", "--n", "10", "--format", "json"],
        &["strata", "--n", "12", "--format", "json"],
        &["scan", "--min-n", "2", "--max-n", "20", "--format", "json"],
        &["eichler", "--n", "5", "--format", "json"],
    ] {
        let out = stdout(&run(args));
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(serde_json::to_string_pretty(&v).unwrap() + "\n", out);
    }
}

#[test]
fn sigma_witness() {
    let out = stdout(&run(&["sigma", "--n", "4"]));
    assert!(out.contains("Bir: finite witness 18,5"), "{out}");
    let v: Value =
        serde_json::from_str(&stdout(&run(&["sigma", "--n", "6", "--format", "json"]))).unwrap();
    assert_eq!(v["status"], "infinite");
    assert_eq!(v["witness"], Value::Null);
}

#[test]
fn strata_rows() {
    let v: Value =
        serde_json::from_str(&stdout(&run(&["strata", "--n", "6", "--format", "json"]))).unwrap();
    let rows = v["rows"].as_array().unwrap();
    let fibers: Vec<_> = rows
        .iter()
        .map(|r| r["fiber_dim"].as_i64().unwrap())
        .collect();
    assert_eq!(fibers, vec![2, 6]);
}

#[test]
fn formulas_catalan() {
    let out = stdout(&run(&["formulas", "--n", "3"]));
    assert!(out.contains("Catalan degree of eta: 42"), "{out}");
}

#[test]
fn verify_reports_counts() {
    let o = run(&["eichler", "--n", "4", "--verify"]);
    assert_eq!(o.status.code(), Some(0));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("verify: 4 passed, 0 failed"), "{err}");
}

#[test]
fn pell_kinds() {
    assert_eq!(
        stdout(&run(&["pell", "--d", "39"])).lines().nth(1),
        Some("25,4")
    );
    assert_eq!(
        stdout(&run(&["pell", "--kind", "negative", "--d", "13"]))
            .lines()
            .nth(1),
        Some("18,5")
    );
    assert_eq!(
        stdout(&run(&["pell", "--kind", "negative", "--d", "3"]))
            .lines()
            .nth(1),
        Some("no solution")
    );
    let mixed = run(&["pell", "--kind", "mixed", "--p", "3", "--q", "13"]);
    assert_eq!(stdout(&mixed).lines().nth(1), Some("2,1"));
    assert_eq!(run(&["pell", "--d", "16"]).status.code(), Some(1));
}

#[test]
fn deterministic_across_jobs() {
    let a = run(&[
        "scan", "--min-n", "2", "--max-n", "120", "--mode", "full", "--format", "csv", "--jobs",
        "1",
    ]);
    let b = run(&[
        "scan", "--min-n", "2", "--max-n", "120", "--mode", "full", "--format", "csv", "--jobs",
        "4",
    ]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(
        stdout(&a).lines().next(),
        Some("n,C_n,walls_below_middle,total_walls,symmetric,extension")
    );
}
