// SPDX-License-Identifier: MIT

//! End-to-end checks of the `heavytail` binary: golden outputs, exit
//! codes, config merging, byte determinism, and the no-partial-file rule.

use std::path::Path;
use std::process::{Command, Output};

fn heavytail(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_heavytail"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf-8 stdout")
}

fn stderr(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).expect("utf-8 stderr")
}

#[test]
fn coeffs_golden_binomial_values() {
    let out = heavytail(&["coeffs", "--gamma", "1.5", "--n", "4"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert_eq!(stdout(&out), "k,g\n0,1\n1,1.5\n2,1.875\n3,2.1875\n");
}

#[test]
fn coeffs_json_mirrors_the_csv_values() {
    let out = heavytail(&["coeffs", "--gamma", "1.5", "--n", "4", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "[1.0,1.5,1.875,2.1875]\n");
}

#[test]
fn out_of_range_alpha_is_a_usage_error() {
    let out = heavytail(&["simulate", "--alpha", "2.5", "--n", "64"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("alpha"), "{}", stderr(&out));
    assert!(stdout(&out).is_empty(), "no partial report on stdout");
}

#[test]
fn usage_errors_leave_no_partial_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.csv");
    let out = heavytail(&[
        "simulate",
        "--alpha",
        "2.5",
        "--n",
        "64",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!path.exists(), "rejected invocation must not create the file");
}

#[test]
fn unknown_flags_and_subcommands_are_rejected() {
    assert_eq!(heavytail(&["coeffs", "--frobnicate"]).status.code(), Some(2));
    assert_eq!(heavytail(&["transmogrify"]).status.code(), Some(2));
    assert_eq!(heavytail(&["--help"]).status.code(), Some(0));
}

#[test]
fn unwritable_out_path_is_an_io_error() {
    let out = heavytail(&[
        "coeffs",
        "--n",
        "4",
        "--out",
        "/nonexistent-heavytail-dir/report.csv",
    ]);
    assert_eq!(out.status.code(), Some(3), "{}", stderr(&out));
}

#[test]
fn identical_flags_and_seed_give_byte_identical_files() {
    let dir = tempfile::tempdir().unwrap();
    let first = dir.path().join("a.csv");
    let second = dir.path().join("b.csv");
    for path in [&first, &second] {
        let out = heavytail(&[
            "flp",
            "--gamma",
            "1.5",
            "--alpha",
            "1.5",
            "--n",
            "64",
            "--seed",
            "9",
            "--depth",
            "2000",
            "--out",
            path.to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    }
    let a = std::fs::read(&first).unwrap();
    let b = std::fs::read(&second).unwrap();
    assert!(!a.is_empty());
    assert_eq!(a, b, "same seed must reproduce the file byte for byte");
}

#[test]
fn config_file_fills_flags_and_flags_win() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("config.json");
    std::fs::write(&config, r#"{"gamma": 1.5, "n": 4}"#).unwrap();
    let from_config = heavytail(&["coeffs", "--config", config.to_str().unwrap()]);
    assert_eq!(from_config.status.code(), Some(0));
    assert_eq!(stdout(&from_config), "k,g\n0,1\n1,1.5\n2,1.875\n3,2.1875\n");

    let overridden = heavytail(&[
        "coeffs",
        "--config",
        config.to_str().unwrap(),
        "--gamma",
        "2",
    ]);
    assert_eq!(overridden.status.code(), Some(0));
    assert_eq!(stdout(&overridden), "k,g\n0,1\n1,2\n2,3\n3,4\n");
}

#[test]
fn decompose_emits_the_identity_residual_column() {
    let out = heavytail(&["decompose", "--n", "64", "--gamma", "0.8", "--seed", "5"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("t,middle,upper,lower,residual"));
    for line in lines {
        let residual: f64 = line.split(',').nth(4).unwrap().parse().unwrap();
        assert!(residual < 1e-9, "{line}");
    }
}

#[test]
fn extremes_emits_the_summary_schema() {
    let out = heavytail(&[
        "extremes", "--gamma", "0.5", "--alpha", "1.5", "--n", "500", "--reps", "50",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(
        text.starts_with("name,n,reps,statistic,value,threshold,pass\n"),
        "{text}"
    );
    assert!(text.contains("extreme-cdf-gap@x="), "{text}");
}

#[test]
fn verify_passes_at_the_default_seed_and_writes_the_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("verify.csv");
    let out = heavytail(&["verify", "--seed", "42", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let report = std::fs::read_to_string(&path).unwrap();
    assert!(
        report.starts_with("name,n,reps,statistic,value,threshold,pass\n"),
        "{report}"
    );
    for index in 1..=10 {
        assert!(
            report.contains(&format!("criterion-{index:02}")),
            "criterion {index} missing from the report"
        );
    }
    assert!(!report.contains(",false\n"), "all criteria pass at seed 42");
}

#[test]
fn missing_config_file_is_an_io_error() {
    let out = heavytail(&["coeffs", "--config", "/nonexistent/config.json"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(Path::new("/nonexistent/config.json").exists() == false);
}
