//! End-to-end tests of the installed binary: exit codes, stream separation
//! and output schemas.

use std::process::{Command, Output};

fn hahnosc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hahnosc"))
        .args(args)
        .output()
        .expect("binary should run")
}

#[test]
fn poly_value_roundtrip() {
    let out = hahnosc(&["poly", "--xi", "1", "--zeta", "2", "--N", "3", "--n", "1", "--x", "7"]);
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert_eq!(stdout.trim(), "n,x,value\n1,7,6");
}

#[test]
fn bad_parameter_exits_two_with_diagnostic_on_stderr() {
    let out = hahnosc(&["poly", "--xi", "-0.75", "--zeta", "1", "--N", "4"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("xi"), "stderr was: {stderr}");
}

#[test]
fn unknown_subcommand_exits_two() {
    let out = hahnosc(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn spectrum_json_schema() {
    let out = hahnosc(&[
        "spectrum", "--k1", "0", "--k2", "0", "--max-level", "3", "--format", "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["schema_version"], "1");
    assert_eq!(doc["command"], "spectrum");
    assert_eq!(doc["rows"].as_array().unwrap().len(), 4);
    assert_eq!(doc["rows"][0]["energy"], 1.0);
    assert_eq!(doc["rows"][3]["counts_match"], 1.0);
}

#[test]
fn overlap_eigen_method_cross_checks() {
    let out = hahnosc(&[
        "overlap", "--level", "4", "--k1", "1", "--k2", "0", "--method", "eigen",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8(out.stdout).unwrap();
    let mut lines = stdout.lines();
    assert_eq!(lines.next().unwrap(), "z,m,value,closed,abs_diff");
    for line in lines {
        let diff: f64 = line.split(',').nth(4).unwrap().parse().unwrap();
        assert!(diff <= 1e-9, "eigen/closed mismatch in: {line}");
    }
}

#[test]
fn verify_filtered_check_passes_and_reports_on_stderr() {
    let out = hahnosc(&["verify", "--only", "q12-spectrum", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.lines().count() >= 1);
    assert!(stderr.lines().all(|l| l.starts_with("PASS")), "stderr: {stderr}");
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    for row in doc["rows"].as_array().unwrap() {
        assert_eq!(row["passed"], 1.0);
        assert!(row["defect"].as_f64().unwrap() <= row["tolerance"].as_f64().unwrap());
    }
}

#[test]
fn verify_unknown_check_exits_two() {
    let out = hahnosc(&["verify", "--only", "not-a-check"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr).unwrap().contains("unknown check"));
}

#[test]
fn help_exits_zero() {
    let out = hahnosc(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stdout).unwrap().contains("verify"));
}
