//! End-to-end command tests against the built binary: golden text output,
//! JSON stability, and exit codes.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kummer24"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn classify_golden_case6() {
    let out = run(&["classify", "-a", "-1", "-b", "-3", "-c", "-8"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("monodromy:      additive abelian"));
    assert!(text.contains("case:           case 6"));
    assert!(text.contains("witness:        n=2, m=4, l=1"));
    assert!(text.contains("log points:     {1, inf}"));
}

#[test]
fn classify_golden_all_logarithmic() {
    let out = run(&["classify", "-a", "1/2", "-b", "1/2", "-c", "1"]);
    let text = stdout(&out);
    assert!(text.contains("case:           case 2"));
    assert!(text.contains("1-c = 0, c-a-b = 0, b-a = 0"));
    assert!(text.contains("log points:     {0, 1, inf}"));
}

#[test]
fn classify_generic() {
    let out = run(&["classify", "-a", "1/3", "-b", "2/5", "-c", "1/7"]);
    assert!(stdout(&out).contains("case:           generic"));
}

#[test]
fn parse_error_names_token_and_exits_2() {
    let out = run(&["classify", "-a", "0.5", "-b", "1", "-c", "1"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr).into_owned();
    assert!(err.contains("0.5"), "stderr: {err}");
}

#[test]
fn eval_elliptic_point() {
    let out = run(&[
        "eval", "-a", "1/2", "-b", "1/2", "-c", "1", "--solution", "k01", "-z", "0.5",
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("1.180340599016096e0"));
}

#[test]
fn eval_unknown_label_exits_2() {
    let out = run(&[
        "eval", "-a", "1/2", "-b", "1/2", "-c", "1", "--solution", "nope", "-z", "0.5",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn eval_singular_point_exits_2() {
    let out = run(&[
        "eval", "-a", "1/2", "-b", "1/2", "-c", "1", "--solution", "k01", "-z", "1",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn eval_case_expression_label() {
    let out = run(&[
        "eval", "-a", "1/3", "-b", "-2", "-c", "2", "--solution", "U2.log1", "-z", "0.25+0.15i",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(stdout(&out).contains("value ="));
}

#[test]
fn solutions_json_round_trips_to_identical_bytes() {
    let out = run(&["solutions", "-a", "-2", "-b", "1/3", "-c", "1/5", "--format", "json"]);
    assert!(out.status.success());
    let first = stdout(&out);
    let parsed: serde_json::Value = serde_json::from_str(&first).unwrap();
    let reprinted = serde_json::to_string_pretty(&parsed).unwrap() + "\n";
    assert_eq!(first, reprinted);
    // stable across invocations
    let second = stdout(&run(&[
        "solutions", "-a", "-2", "-b", "1/3", "-c", "1/5", "--format", "json",
    ]));
    assert_eq!(first, second);
}

#[test]
fn solutions_counts_for_reducible_witness() {
    let out = run(&["solutions", "-a", "-2", "-b", "1/3", "-c", "1/5", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["descriptors"].as_array().unwrap().len(), 24);
    assert_eq!(v["distinct_series"], 24);
    let term = v["descriptors"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|d| d["status"] == "terminating")
        .count();
    assert_eq!(term, 6);
}

#[test]
fn table_all_rows_match() {
    let out = run(&["table"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("6+2, 6+2, 6+2"));
    assert!(!text.contains(" NO"));
}

#[test]
fn verify_trivial_monodromy_instance_passes() {
    let out = run(&["verify", "-a", "-1", "-b", "2", "-c", "-2", "--points", "4"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(stdout(&out).contains("0 failed"));
}

#[test]
fn verify_json_reports() {
    let out = run(&[
        "verify", "-a", "-1", "-b", "2", "-c", "-2", "--points", "4", "--format", "json",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(v.as_array().unwrap().len() > 50);
    assert!(v.as_array().unwrap().iter().all(|r| r["pass"] == true));
}

#[test]
fn verify_absurd_tolerance_fails_with_exit_1() {
    let out = run(&[
        "verify", "-a", "-1", "-b", "2", "-c", "-2", "--points", "4", "--tol", "1e-30",
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn seed_changes_sample_points_not_verdicts() {
    let a = stdout(&run(&[
        "verify", "-a", "-2", "-b", "1/3", "-c", "1/5", "--points", "4", "--seed", "1",
    ]));
    let b = stdout(&run(&[
        "verify", "-a", "-2", "-b", "1/3", "-c", "1/5", "--points", "4", "--seed", "2",
    ]));
    assert!(a.contains("0 failed"));
    assert!(b.contains("0 failed"));
}

#[test]
fn latex_rendering_mentions_gauss_series() {
    let out = run(&["solutions", "-a", "1/3", "-b", "2/5", "-c", "1/7", "--format", "latex"]);
    assert!(stdout(&out).contains("_2F_1"));
}
