//! End-to-end checks of the binary: exit codes, report schemas, trace files,
//! and byte-level determinism.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_feasolve"))
}

fn tmp(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name)
}

fn write_tmp(name: &str, contents: &str) -> PathBuf {
    let path = tmp(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

const FEASIBLE_DOC: &str = r#"{"c":[1,1,1],"A":[[1,0,-1],[0,1,1]],"b":[-1,2]}"#;
const INFEASIBLE_DOC: &str = r#"{"c":[0,0,0],"A":[[1,0,2],[0,1,-1]],"b":[-1,2]}"#;
const UNBOUNDED_DOC: &str = r#"{"c":[-1,0],"A":[[1,-1]],"b":[0]}"#;

#[test]
fn solve_reports_optimal_with_exit_zero() {
    let path = write_tmp("feasible.json", FEASIBLE_DOC);
    let out = run(&["solve", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["status"], "optimal");
    assert_eq!(report["x"], serde_json::json!(["0", "1", "1"]));
    assert_eq!(report["basis"], serde_json::json!([2, 3]));
    assert_eq!(report["objective"], "2");
}

#[test]
fn infeasible_exits_one_with_certificate() {
    let path = write_tmp("infeasible.json", INFEASIBLE_DOC);
    let out = run(&["solve", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["status"], "infeasible");
    assert_eq!(report["certificate"]["row"], 1);
    assert_eq!(report["certificate"]["y"], serde_json::json!(["1", "0"]));
}

#[test]
fn unbounded_exits_two_with_ray() {
    let path = write_tmp("unbounded.json", UNBOUNDED_DOC);
    let out = run(&["solve", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["status"], "unbounded");
    assert_eq!(report["ray"], serde_json::json!(["1", "1"]));
}

#[test]
fn malformed_input_exits_three() {
    let path = write_tmp("malformed.json", r#"{"c":[1],"A":[[1,2]],"b":[1]}"#);
    let out = run(&["solve", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stdout(&out).is_empty());
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("c"), "stderr should name the offending field: {err}");
}

#[test]
fn missing_file_exits_three() {
    let out = run(&["solve", "/nonexistent/problem.json"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn phase1_subcommand_reports_feasibility_only() {
    let path = write_tmp("phase1.json", FEASIBLE_DOC);
    let out = run(&["phase1", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let report: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(report["status"], "feasible");
    assert!(!text.contains("objective"));
}

#[test]
fn trace_file_is_json_lines_with_one_based_indices() {
    let path = write_tmp("traced.json", FEASIBLE_DOC);
    let trace = tmp("trace.jsonl");
    let out = run(&[
        "solve",
        path.to_str().unwrap(),
        "--trace",
        trace.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let lines: Vec<serde_json::Value> = std::fs::read_to_string(&trace)
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(lines.len(), 1);
    assert_eq!(lines[0]["phase"], 1);
    assert_eq!(lines[0]["iter"], 1);
    assert_eq!(lines[0]["basis"], serde_json::json!([1, 2]));
    assert_eq!(lines[0]["leaving"], 1);
    assert_eq!(lines[0]["entering"], 3);
    assert_eq!(lines[0]["row"], 1);
    assert_eq!(lines[0]["b"], serde_json::json!(["-1", "2"]));
}

#[test]
fn unsorted_rule_reaches_the_same_verdict() {
    let path = write_tmp("unsorted.json", FEASIBLE_DOC);
    let out = run(&["solve", path.to_str().unwrap(), "--rule", "unsorted"]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["status"], "optimal");
    assert_eq!(report["objective"], "2");
}

#[test]
fn oracle_flag_verifies_the_verdict() {
    let path = write_tmp("oracle.json", INFEASIBLE_DOC);
    let out = run(&["solve", path.to_str().unwrap(), "--oracle", "both"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn float_mode_flags_are_reported() {
    let path = write_tmp("float.json", FEASIBLE_DOC);
    let out = run(&["solve", path.to_str().unwrap(), "--arith", "float"]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["status"], "optimal");
    assert_eq!(report["numerically_suspect"], false);
}

#[test]
fn gen_emits_a_parseable_document() {
    let out = run(&["gen", "--seed", "3", "--m", "2", "--n", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = stdout(&out);
    let parsed = feasolve_cli::parse_problem(&doc).unwrap();
    assert_eq!(parsed.problem.num_rows(), 2);
    assert_eq!(parsed.problem.num_cols(), 5);
}

#[test]
fn gen_solve_round_trip_via_stdin() {
    let gen = run(&["gen", "--seed", "11", "--m", "3", "--n", "6", "--scheme", "negative-b"]);
    assert_eq!(gen.status.code(), Some(0));
    let doc = stdout(&gen);

    use std::io::Write;
    let mut child = bin()
        .args(["solve", "-"])
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .stderr(std::process::Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.as_mut().unwrap().write_all(doc.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    let code = out.status.code().unwrap();
    assert!(
        (0..=2).contains(&code),
        "solver should reach a verdict, got exit {code}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
}

#[test]
fn fuzz_agrees_and_exits_zero() {
    let out = run(&["fuzz", "--count", "40", "--seed", "9", "--m", "4", "--n", "8"]);
    assert_eq!(out.status.code(), Some(0));
    let summary: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(summary["count"], 40);
    assert_eq!(summary["agreed"], 40);
    assert_eq!(summary["mismatches"], serde_json::json!([]));
}

#[test]
fn identical_invocations_are_byte_identical() {
    let path = write_tmp("determinism.json", FEASIBLE_DOC);
    let trace_a = tmp("det_a.jsonl");
    let trace_b = tmp("det_b.jsonl");
    let a = run(&["solve", path.to_str().unwrap(), "--trace", trace_a.to_str().unwrap()]);
    let b = run(&["solve", path.to_str().unwrap(), "--trace", trace_b.to_str().unwrap()]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(std::fs::read(&trace_a).unwrap(), std::fs::read(&trace_b).unwrap());

    let g1 = run(&["gen", "--seed", "5", "--m", "2", "--n", "4"]);
    let g2 = run(&["gen", "--seed", "5", "--m", "2", "--n", "4"]);
    assert_eq!(g1.stdout, g2.stdout);

    let f1 = run(&["fuzz", "--count", "10", "--seed", "1", "--m", "3", "--n", "6"]);
    let f2 = run(&["fuzz", "--count", "10", "--seed", "1", "--m", "3", "--n", "6"]);
    assert_eq!(f1.stdout, f2.stdout);
}
