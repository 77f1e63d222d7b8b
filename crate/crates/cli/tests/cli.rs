//! End-to-end tests of the command-line surface: exit codes, determinism,
//! output formats and the environment-variable fallback.

use std::process::{Command, Output};

fn zpe(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zpe"))
        .args(args)
        .env_remove("ZPE_SEED")
        .output()
        .expect("binary runs")
}

#[test]
fn spectrum_emits_header_plus_grid_rows() {
    let out = zpe(&["spectrum", "--beta-count", "50"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 51);
    assert_eq!(lines[0], "beta,u,u_thermal,sigma2,cv,s,z");
    // Numeric payload carries 17 significant digits.
    assert!(lines[1].split(',').all(|cell| cell.parse::<f64>().is_ok()));
}

#[test]
fn repeated_runs_are_byte_identical() {
    for cmd in ["spectrum", "variance", "mc"] {
        let args = [cmd, "--beta-count", "3", "--samples", "2000"];
        let a = zpe(&args);
        let b = zpe(&args);
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout, "{cmd} output varies between runs");
    }
}

#[test]
fn unknown_flag_is_a_usage_error() {
    let out = zpe(&["spectrum", "--no-such-flag"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unknown_subcommand_is_a_usage_error() {
    let out = zpe(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn malformed_range_is_rejected_before_computation() {
    let out = zpe(&["spectrum", "--beta-min=-1"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("beta-min"), "stderr: {err}");

    let out = zpe(&["spectrum", "--beta-min", "2", "--beta-max", "1"]);
    assert_eq!(out.status.code(), Some(2));

    let out = zpe(&["spectrum", "--beta-count", "0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn numeric_domain_error_exits_3_and_echoes_parameters() {
    // A discrete spectrum this deep into the classical regime would need
    // more levels than the cap.
    let out = zpe(&["discrete", "--beta-min", "1e-9", "--beta-count", "1"]);
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("classical"), "stderr: {err}");
}

#[test]
fn unwritable_output_path_exits_3() {
    let out = zpe(&[
        "spectrum",
        "--beta-count",
        "1",
        "--out",
        "/nonexistent-dir/report.csv",
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn failed_verification_exits_1() {
    // Two draws cannot establish the variance concordance (the standard
    // error of a sample variance is not even estimable), so the sampler
    // checks fail deterministically and the report must say so.
    let out = zpe(&["verify", "--samples", "2"]);
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().any(|l| l.ends_with(",false")), "no failing rows");
}

#[test]
fn json_reports_echo_the_configuration() {
    let out = zpe(&[
        "spectrum",
        "--beta-count",
        "2",
        "--seed",
        "9",
        "--format",
        "json",
    ]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["meta"]["command"], "spectrum");
    assert_eq!(doc["meta"]["seed"], 9);
    assert_eq!(doc["meta"]["config"]["beta_count"], 2);
    assert!(doc["meta"]["version"].is_string());
    assert_eq!(doc["rows"].as_array().unwrap().len(), 2);
}

#[test]
fn seed_falls_back_to_environment_variable() {
    let out = Command::new(env!("CARGO_BIN_EXE_zpe"))
        .args([
            "mc",
            "--beta-count",
            "1",
            "--samples",
            "100",
            "--format",
            "json",
        ])
        .env("ZPE_SEED", "1234")
        .output()
        .unwrap();
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["meta"]["seed"], 1234);
    // An explicit flag still wins.
    let out = Command::new(env!("CARGO_BIN_EXE_zpe"))
        .args([
            "mc",
            "--beta-count",
            "1",
            "--samples",
            "100",
            "--seed",
            "7",
            "--format",
            "json",
        ])
        .env("ZPE_SEED", "1234")
        .output()
        .unwrap();
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["meta"]["seed"], 7);
}

#[test]
fn classical_branch_via_e0_zero() {
    let out = zpe(&[
        "spectrum",
        "--e0",
        "0",
        "--beta-min",
        "2",
        "--beta-count",
        "1",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let row: Vec<f64> = text
        .lines()
        .nth(1)
        .unwrap()
        .split(',')
        .map(|c| c.parse().unwrap())
        .collect();
    assert_eq!(row[1], 0.5); // u = 1/beta
    assert_eq!(row[4], 1.0); // cv = k
}

#[test]
fn degenerate_single_draw_batch_has_empty_variance_cells() {
    let out = zpe(&[
        "mc",
        "--beta-min",
        "1",
        "--beta-count",
        "1",
        "--samples",
        "1",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let row = text.lines().nth(1).unwrap();
    let cells: Vec<&str> = row.split(',').collect();
    assert_eq!(cells[2], "1"); // n
    assert_eq!(cells[4], ""); // variance undefined
    assert_eq!(cells[5], ""); // std_error undefined
}

#[test]
fn file_output_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("table.csv");
    let to_file = zpe(&[
        "spectrum",
        "--beta-count",
        "4",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(to_file.status.success());
    let from_stdout = zpe(&["spectrum", "--beta-count", "4"]);
    assert_eq!(std::fs::read(&path).unwrap(), from_stdout.stdout);
}

#[test]
fn every_table_command_runs_on_a_small_grid() {
    for cmd in [
        "spectrum",
        "variance",
        "discrete",
        "moments",
        "statistical",
        "wigner",
        "historical",
    ] {
        let out = zpe(&[
            cmd,
            "--beta-min",
            "0.1",
            "--beta-max",
            "10",
            "--beta-count",
            "3",
        ]);
        assert!(out.status.success(), "{cmd} failed");
        let text = String::from_utf8(out.stdout).unwrap();
        assert_eq!(text.lines().count(), 4, "{cmd} row count");
    }
}
