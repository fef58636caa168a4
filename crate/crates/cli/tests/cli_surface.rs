//! End-to-end tests of the command surface: file formats, exit codes, and
//! byte-deterministic reports.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_reflectwist"))
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("reflectwist-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|_| {
        panic!("stdout was not JSON: {}", String::from_utf8_lossy(&out.stdout))
    })
}

const FLIP: &str = r#"{"n": 2, "sigma": [[0, 1], [0, 1]], "rho": [[0, 1], [0, 1]]}"#;
const P3: &str =
    r#"{"n": 3, "sigma": [[1, 2, 0], [1, 2, 0], [1, 2, 0]], "rho": [[0, 1, 2], [0, 1, 2], [0, 1, 2]]}"#;
const PLUS1: &str = r#"{"k": [1, 2, 0]}"#;

#[test]
fn check_ybe_passes_on_flip() {
    let path = scratch("flip.json", FLIP);
    let out = run(&["check", "ybe", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let report = stdout_json(&out);
    assert_eq!(report["format_version"], 1);
    assert_eq!(report["ok"], true);
    assert_eq!(report["flags"]["involutive"], true);
}

#[test]
fn check_ybe_fails_with_witness_on_non_solution() {
    let path = scratch(
        "bad.json",
        r#"{"n": 2, "sigma": [[0, 0], [0, 0]], "rho": [[0, 0], [0, 1]]}"#,
    );
    let out = run(&["check", "ybe", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let report = stdout_json(&out);
    assert_eq!(report["ok"], false);
    assert_eq!(report["witness"]["triple"], serde_json::json!([1, 1, 1]));
}

#[test]
fn malformed_input_exits_two() {
    let path = scratch("ragged.json", r#"{"n": 2, "sigma": [[0, 1]], "rho": [[0, 1], [0, 1]]}"#);
    let out = run(&["check", "ybe", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let path = scratch("notjson.json", "plainly not json");
    let out = run(&["check", "ybe", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn check_reflection_both_ways() {
    let sol = scratch("p3.json", P3);
    let good = scratch("plus1.json", PLUS1);
    let out = run(&["check", "reflection", sol.to_str().unwrap(), good.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let bad = scratch("swap01.json", r#"{"k": [1, 0, 2]}"#);
    let out = run(&[
        "check",
        "reflection",
        sol.to_str().unwrap(),
        bad.to_str().unwrap(),
        "--side",
        "right",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let report = stdout_json(&out);
    assert_eq!(report["witness"]["pair"], serde_json::json!([0, 0]));
}

#[test]
fn derive_and_twist_roundtrip_through_files() {
    let sol = scratch("p3b.json", P3);
    let map = scratch("plus1b.json", PLUS1);
    // derived solution of p3 is p3 itself (trivial right action)
    let out = run(&["derive", sol.to_str().unwrap(), "--k", map.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let report = stdout_json(&out);
    assert_eq!(report["solution"]["sigma"][0], serde_json::json!([1, 2, 0]));
    // twist from-reflection emits a twist file that check twist accepts
    let out = run(&["twist", "from-reflection", sol.to_str().unwrap(), map.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let twist = stdout_json(&out)["twist"].clone();
    let twist_path = scratch("p3-twist.json", &twist.to_string());
    let out = run(&["check", "twist", sol.to_str().unwrap(), twist_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["ok"], true);
}

#[test]
fn monoid_commands_report_classes_and_checks() {
    let sol = scratch("p3c.json", P3);
    let map = scratch("plus1c.json", PLUS1);
    let out = run(&["monoid", "classes", sol.to_str().unwrap(), "--degree", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let report = stdout_json(&out);
    assert_eq!(report["classes"].as_array().unwrap().len(), 2);
    let out = run(&[
        "monoid",
        "garside",
        sol.to_str().unwrap(),
        map.to_str().unwrap(),
        "--degree",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let out = run(&[
        "monoid",
        "re-check",
        sol.to_str().unwrap(),
        map.to_str().unwrap(),
        "--degree",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn size_gate_exits_three_and_respects_env() {
    let sol = scratch("flip2.json", FLIP);
    let out = bin()
        .args(["monoid", "classes", sol.to_str().unwrap(), "--degree", "4"])
        .env("REFLECTWIST_SIZE_GATE", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn enumerate_commands_emit_canonical_json_lines() {
    let out = run(&["enumerate", "groups", "--order", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 2);
    let out = run(&["enumerate", "skew-braces", "--order", "4", "--strategy", "direct"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 4);
    // reflections of p3 are the three shifts
    let sol = scratch("p3d.json", P3);
    let out = run(&["enumerate", "reflections", sol.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap().lines().count(), 3);
}

#[test]
fn reports_are_byte_identical_across_runs_and_worker_counts() {
    let first = run(&["hunt", "ell-counterexamples", "--max-order", "4"]);
    let second = run(&["hunt", "ell-counterexamples", "--max-order", "4"]);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);
    let parallel = run(&["hunt", "ell-counterexamples", "--max-order", "4", "--jobs", "4"]);
    assert_eq!(parallel.stdout, first.stdout);
    let report = stdout_json(&first);
    assert_eq!(report["count"], 8);
    // bijective-k filter keeps them (the first failures have bijective k)
    let bij = run(&["hunt", "ell-counterexamples", "--max-order", "4", "--bijective-k"]);
    assert_eq!(stdout_json(&bij)["count"], 8);
}

#[test]
fn group_reflection_check_and_enumeration() {
    // trivial brace on Z2: flip braiding, id map is a group reflection
    let grp = scratch("z2.json", r#"{"n": 2, "mul": [[0, 1], [1, 0]], "identity": 0}"#);
    let sol = scratch("flip3.json", FLIP);
    let idmap = scratch("id2.json", r#"{"k": [0, 1]}"#);
    let out = run(&[
        "check",
        "group-reflection",
        grp.to_str().unwrap(),
        sol.to_str().unwrap(),
        idmap.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let brace = scratch(
        "z2brace.json",
        r#"{"n": 2, "add": [[0, 1], [1, 0]], "mul": [[0, 1], [1, 0]]}"#,
    );
    let out = run(&["enumerate", "group-reflections", brace.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap().lines().count(), 2);
}

#[test]
fn verify_suite_quick_reports_matrix_and_exit_code() {
    let out = run(&["verify-suite", "--level", "quick"]);
    // two criteria record refuted published claims, so the suite reports
    // failure
    assert_eq!(out.status.code(), Some(1));
    let report = stdout_json(&out);
    assert_eq!(report["format_version"], 1);
    assert_eq!(report["criteria"].as_array().unwrap().len(), 12);
    assert_eq!(report["adjudications"].as_array().unwrap().len(), 5);
    let failed: Vec<&str> = report["criteria"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["passed"] == false)
        .map(|c| c["id"].as_str().unwrap())
        .collect();
    assert_eq!(failed, ["permutation-twist-impossibility", "ell-counterexample-hunt"]);
}
