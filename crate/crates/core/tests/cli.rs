//! End-to-end checks of the binary: exit codes, output shapes, --out.

use std::process::Command;

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_deephole"))
        .args(args)
        .output()
        .unwrap();
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn distance_examples() {
    let (code, out, _) = run(&[
        "distance", "--q", "q=7", "--set", "star", "--k", "2", "--poly", "0,0,0,0,0,1",
    ]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["payload"]["distance"], 4);
    assert_eq!(v["payload"]["is_deep_hole"], true);

    let (code, out, _) = run(&["distance", "--q", "q=7", "--set", "star", "--k", "2", "--poly", "0,1"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["payload"]["distance"], 0);

    let (code, out, _) = run(&[
        "distance", "--q", "q=7", "--set", "full", "--k", "2", "--poly", "0,0,0,0,1",
    ]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["payload"]["is_deep_hole"], false);
}

#[test]
fn solve_lex_least() {
    let (code, out, _) = run(&["solve", "--q", "q=7", "--t", "3", "--a", "0", "--b", "0"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["payload"]["verified"], true);
    assert_eq!(v["payload"]["tuple_enc"], serde_json::json!([0, 1, 2]));
}

#[test]
fn census_match_row() {
    let (code, out, _) = run(&[
        "census", "--q", "q=2^3", "--set", "star", "--t", "5", "--b", "0", "--format", "csv",
    ]);
    assert_eq!(code, 0);
    assert!(out.contains("5,0,0,0,true"), "{out}");
}

#[test]
fn verify_exit_codes_and_invalid_input() {
    let (code, _, _) = run(&["verify", "--family", "even-char", "--q", "q=2^3", "--set", "star"]);
    assert_eq!(code, 0);
    let (code, _, err) = run(&["verify", "--family", "no-such-family", "--q", "q=7"]);
    assert_eq!(code, 2, "{err}");
    let (code, _, err) = run(&["distance", "--q", "q=6", "--k", "2", "--poly", "0,1"]);
    assert_eq!(code, 2, "{err}");
}

#[test]
fn budget_exit_code() {
    let (code, _, err) = run(&[
        "distance", "--q", "q=13", "--set", "star", "--k", "6", "--poly",
        "0,0,0,0,0,0,0,0,0,0,1", "--budget", "1",
    ]);
    assert_eq!(code, 3, "{err}");
}

#[test]
fn out_file_written() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("scan.csv");
    let (code, _, _) = run(&[
        "scan", "--q", "q=5", "--set", "star", "--k", "2", "--deg-min", "2", "--deg-max", "2",
        "--format", "csv", "--out", path.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.contains("2,0 0 1,2,true"), "{text}");
}
