use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hecke-verify"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn strip_timings(mut v: Value) -> Value {
    for check in v["checks"].as_array_mut().unwrap() {
        check.as_object_mut().unwrap().remove("elapsed_ms");
    }
    v
}

#[test]
fn a1_diagram_passes_as_json() {
    let out = run(&["--type", "A", "--rank", "1", "--order", "8", "--suite", "diagram", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["datum"]["type"], "A");
    assert_eq!(v["datum"]["rank"], 1);
    assert_eq!(v["datum"]["cartan"], serde_json::json!([[2]]));
    assert_eq!(v["order"], 8);
    assert_eq!(v["guard"], 2);
    assert_eq!(v["seed"], 0);
    assert!(v["artifact_version"].is_string());
    let checks = v["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 1);
    assert_eq!(checks[0]["name"], "check_diagram");
    assert_eq!(checks[0]["status"], "pass");
    assert!(checks[0]["elapsed_ms"].is_u64());
}

#[test]
fn non_cartan_file_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.txt");
    fs::write(&path, "2\n2 -1\n-1 3\n").unwrap();
    let out = run(&["--cartan-file", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("invalid Cartan matrix"), "{stderr}");
}

#[test]
fn unknown_flags_and_missing_rank_exit_2() {
    assert_eq!(run(&["--type", "A", "--rank", "1", "--bogus"]).status.code(), Some(2));
    assert_eq!(run(&["--type", "A"]).status.code(), Some(2));
    assert_eq!(run(&["--type", "D", "--rank", "2"]).status.code(), Some(2));
    assert_eq!(run(&[]).status.code(), Some(2));
}

#[test]
fn reports_are_deterministic() {
    let args = ["--type", "A", "--rank", "2", "--order", "6", "--suite", "all", "--seed", "42", "--format", "json"];
    let first = run(&args);
    let second = run(&args);
    assert_eq!(first.status.code(), Some(0));
    let a: Value = serde_json::from_slice(&first.stdout).unwrap();
    let b: Value = serde_json::from_slice(&second.stdout).unwrap();
    assert_eq!(strip_timings(a.clone()), strip_timings(b));
    let names: Vec<&str> = a["checks"].as_array().unwrap().iter().map(|c| c["name"].as_str().unwrap()).collect();
    assert_eq!(
        names,
        ["check_diagram", "check_display_identity", "check_modules", "check_morphisms", "check_presentation"]
    );
}

#[test]
fn writes_text_report_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.txt");
    let out = run(&[
        "--type", "G", "--order", "3", "--suite", "display", "--suite", "presentation",
        "--out", path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("datum G2"), "{text}");
    assert!(text.contains("check_display_identity  pass"));
    assert!(text.contains("check_presentation"));
}

#[test]
fn cartan_file_datum_runs() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("b2.txt");
    fs::write(&path, "2\n2 -2\n-1 2\n").unwrap();
    let out = run(&["--cartan-file", path.to_str().unwrap(), "--order", "3", "--suite", "diagram", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["datum"]["rank"], 2);
}
