//! End-to-end tests of the `umbra` binary: output contracts, exit codes,
//! and determinism across parallelism degrees.

use std::process::{Command, Output};

fn umbra(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_umbra"))
        .args(args)
        .env_remove("UMBRA_TRUNC_GUARD")
        .output()
        .expect("binary runs")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

#[test]
fn compute_abel_text() {
    let out = umbra(&["compute", "--family", "abel", "--n", "2", "--b", "1"]);
    assert!(out.status.success());
    assert_eq!(stdout_of(&out), "x^2 - 2*x\n");
}

#[test]
fn compute_stirling2_value() {
    let out = umbra(&["compute", "--family", "stirling2", "--l", "4", "--n", "2"]);
    assert!(out.status.success());
    assert_eq!(stdout_of(&out), "7\n");
}

#[test]
fn compute_abel_rejects_zero_b() {
    let out = umbra(&["compute", "--family", "abel", "--n", "2", "--b", "0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn compute_unknown_flag_is_an_error() {
    let out = umbra(&[
        "compute", "--family", "abel", "--n", "2", "--b", "1", "--frob", "1",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn compute_eval_lambda_and_poles() {
    let out = umbra(&[
        "compute",
        "--family",
        "fe-number",
        "--n",
        "2",
        "--eval-lambda",
        "2",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout_of(&out), "3\n"); // (L+1)/(L-1)^2 at L=2
    let out = umbra(&[
        "compute",
        "--family",
        "fe-number",
        "--n",
        "2",
        "--eval-lambda",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn compute_json_and_latex() {
    let out = umbra(&[
        "compute", "--family", "abel", "--n", "2", "--b", "1", "--format", "json",
    ]);
    assert!(out.status.success());
    assert_eq!(
        stdout_of(&out),
        "{\"family\": \"abel\", \"params\": {\"n\": \"2\", \"b\": \"1\"}, \"value\": \"x^2-2*x\"}\n"
    );
    let out = umbra(&[
        "compute", "--family", "abel", "--n", "2", "--b", "1", "--format", "latex",
    ]);
    assert_eq!(stdout_of(&out), "x^{2} - 2x\n");
}

#[test]
fn table_fe_numbers() {
    let out = umbra(&["table", "--family", "fe-numbers", "--rows", "2"]);
    assert!(out.status.success());
    assert_eq!(stdout_of(&out), "1, 1/(L-1), (L+1)/(L-1)^2\n");
}

#[test]
fn table_stirling1_csv_row_four() {
    let out = umbra(&[
        "table",
        "--family",
        "stirling1",
        "--rows",
        "4",
        "--format",
        "csv",
    ]);
    assert!(out.status.success());
    let text = stdout_of(&out);
    let last = text.trim_end().lines().last().unwrap();
    assert_eq!(last, "0,-6,11,-6,1");
}

#[test]
fn table_rejects_zero_rows() {
    let out = umbra(&["table", "--family", "stirling2", "--rows", "0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_t4_exits_zero() {
    let out = umbra(&["verify", "--id", "T4", "--n-max", "5"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout_of(&out).contains("suite: PASS"));
}

#[test]
fn verify_t9_with_overrides() {
    let out = umbra(&[
        "verify", "--id", "T9", "--n-max", "3", "--b", "1", "--b", "1/2", "--a-max", "2",
    ]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn verify_full_suite_probe_separation() {
    // Probes fail instances but never the suite: exit code must be 0, and
    // the JSON report must show the E43 failures.
    let out = umbra(&["verify", "--all", "--jobs", "2", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    assert!(text.contains("\"id\": \"E43\""));
    assert!(text.contains("\"expectation\": \"probe\""));
    assert!(text.contains("\"status\": \"fail\""));
    assert!(text.contains("\"witness\""));
    for id in ["T1", "T10", "EFinal"] {
        assert!(text.contains(&format!("\"id\": \"{id}\"")), "{id} missing");
    }
}

#[test]
fn verify_timings_flag_populates_ms() {
    let out = umbra(&["verify", "--id", "T4", "--format", "json", "--timings"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout_of(&out).contains("\"ms\":"));
}

#[test]
fn verify_reports_are_deterministic_across_jobs() {
    let a = umbra(&["verify", "--id", "T3", "--format", "csv", "--jobs", "1"]);
    let b = umbra(&["verify", "--id", "T3", "--format", "csv", "--jobs", "7"]);
    assert_eq!(stdout_of(&a), stdout_of(&b));
    let a = umbra(&["verify", "--id", "E51", "--format", "json", "--jobs", "1"]);
    let b = umbra(&["verify", "--id", "E51", "--format", "json", "--jobs", "3"]);
    assert_eq!(stdout_of(&a), stdout_of(&b));
}

#[test]
fn verify_rejects_bad_grid() {
    let out = umbra(&["verify", "--id", "T9", "--b", "0"]);
    assert_eq!(out.status.code(), Some(2));
    let out = umbra(&["verify", "--id", "T12"]);
    assert_eq!(out.status.code(), Some(2));
    let out = umbra(&["verify"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_probe_alone_exits_zero() {
    // Every must-hold entry is a true identity, so exit 1 cannot be
    // produced honestly; what the contract needs checked is that probe
    // failures alone keep the exit code at 0.
    let out = umbra(&["verify", "--id", "E43"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    assert!(text.contains("PROBE"));
    assert!(text.contains("FAIL witness"));
}

#[test]
fn verify_out_writes_file() {
    let dir = std::env::temp_dir().join("umbra-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("t4.csv");
    let out = umbra(&[
        "verify",
        "--id",
        "T4",
        "--format",
        "csv",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let content = std::fs::read_to_string(&path).unwrap();
    assert!(content.starts_with("id,expectation,params,status,witness"));
    assert!(content.contains("T4,must_hold,n=1 l=0,pass,"));
    std::fs::remove_file(&path).ok();
}

#[test]
fn trunc_guard_env_is_honored() {
    let out = Command::new(env!("CARGO_BIN_EXE_umbra"))
        .args(["verify", "--id", "T8", "--format", "text"])
        .env("UMBRA_TRUNC_GUARD", "3")
        .output()
        .expect("binary runs");
    assert_eq!(out.status.code(), Some(0));
    let out = Command::new(env!("CARGO_BIN_EXE_umbra"))
        .args(["verify", "--id", "T8"])
        .env("UMBRA_TRUNC_GUARD", "not-a-number")
        .output()
        .expect("binary runs");
    assert_eq!(out.status.code(), Some(2));
}
