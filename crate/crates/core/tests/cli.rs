//! End-to-end tests of the cavity-dj binary: exit codes, determinism,
//! oracle file handling, and output formats.

use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_cavity-dj"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).env_remove("CAVITY_DJ_SEED").output().expect("binary runs")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("stdout is utf-8")
}

fn stderr_of(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("stderr is utf-8")
}

fn write_oracle(dir: &Path, name: &str, content: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, content).unwrap();
    path.display().to_string()
}

#[test]
fn reports_are_byte_identical_across_runs() {
    let args = [
        "run-dj", "--n", "4", "--oracle", "random-balanced", "--mode", "two-level",
        "--seed", "12345", "--shots", "200",
    ];
    let first = run(&args);
    let second = run(&args);
    assert_eq!(first.status.code(), Some(0), "stderr: {}", stderr_of(&first));
    assert_eq!(first.stdout, second.stdout);
    assert!(!first.stdout.is_empty());
}

#[test]
fn deutsch_decides_all_named_oracles() {
    for (oracle, expected) in [
        ("constant0", "constant"),
        ("constant1", "constant"),
        ("parity", "balanced"),
    ] {
        for mode in ["ideal", "two-level"] {
            let out = run(&["run-deutsch", "--oracle", oracle, "--mode", mode]);
            assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr_of(&out));
            let text = stdout_of(&out);
            assert!(
                text.contains(&format!("\"decision\":\"{expected}\"")),
                "oracle {oracle} in {mode}: {text}"
            );
        }
    }
}

#[test]
fn usage_errors_exit_1() {
    let cases: &[&[&str]] = &[
        &["run-dj", "--n", "2", "--oracle", "parity", "--mode", "warp"],
        &["run-dj", "--n", "2", "--oracle", "parity", "--mode", "coherent"],
        &["run-dj", "--n", "2", "--oracle", "parity", "--alpha", "2.0"],
        &["run-dj", "--n", "2", "--oracle", "parity", "--n-max", "30"],
        &["run-dj", "--n", "2", "--oracle", "random-balanced"],
        &["run-dj", "--n", "2", "--oracle", "parity", "--format", "xml"],
        &["run-dj", "--oracle", "parity"],
        &["run-deutsch", "--n", "2", "--oracle", "parity"],
        &["run-dj", "--unknown-flag"],
        &["run-dj", "--n", "11", "--oracle", "parity", "--mode", "two-level"],
        &["cat-prep", "--target", "e"],
        &["feasibility", "--phi", "tau"],
    ];
    for args in cases {
        let out = run(args);
        assert_eq!(out.status.code(), Some(1), "args {args:?}: {}", stderr_of(&out));
    }
}

#[test]
fn oracle_file_problems_exit_2() {
    let dir = tempfile::tempdir().unwrap();

    let unbalanced = write_oracle(dir.path(), "unbalanced.txt", "2\n0100\n");
    let out = run(&["run-dj", "--oracle", &unbalanced]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_of(&out).contains("oracle class violation"));

    let garbled = write_oracle(dir.path(), "garbled.txt", "2\n01a0\n");
    let out = run(&["run-dj", "--oracle", &garbled]);
    assert_eq!(out.status.code(), Some(2));
    let err = stderr_of(&out);
    assert!(err.contains("line 2") && err.contains("column 3"), "got: {err}");

    let missing = dir.path().join("missing.txt").display().to_string();
    let out = run(&["run-dj", "--oracle", &missing]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_of(&out).contains("cannot read oracle file"));
}

#[test]
fn truncation_overflow_exits_3() {
    let out = run(&[
        "run-dj", "--n", "1", "--oracle", "parity", "--mode", "coherent",
        "--alpha", "2.0", "--n-max", "2",
    ]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr_of(&out).contains("insufficient Fock truncation"));
}

#[test]
fn oracle_files_parse_and_decide() {
    let dir = tempfile::tempdir().unwrap();

    let constant = write_oracle(dir.path(), "c0.txt", "1\n00\n");
    let out = run(&["run-dj", "--oracle", &constant]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    assert!(text.contains("\"decision\":\"constant\""));
    assert!(text.contains("\"n\":1"));

    // no trailing newline
    let parity = write_oracle(dir.path(), "parity.txt", "2\n0110");
    let out = run(&["run-dj", "--oracle", &parity, "--mode", "two-level"]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr_of(&out));
    assert!(stdout_of(&out).contains("\"decision\":\"balanced\""));

    // --n agreeing with the file is fine, disagreeing is a usage error
    let out = run(&["run-dj", "--n", "2", "--oracle", &parity]);
    assert_eq!(out.status.code(), Some(0));
    let out = run(&["run-dj", "--n", "3", "--oracle", &parity]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr_of(&out).contains("contradicts"));
}

#[test]
fn seed_env_var_is_honored() {
    let from_env = bin()
        .args(["run-dj", "--n", "3", "--oracle", "random-balanced"])
        .env("CAVITY_DJ_SEED", "777")
        .output()
        .unwrap();
    assert_eq!(from_env.status.code(), Some(0), "stderr: {}", stderr_of(&from_env));

    let from_flag = run(&["run-dj", "--n", "3", "--oracle", "random-balanced", "--seed", "777"]);
    assert_eq!(from_env.stdout, from_flag.stdout);

    // the flag wins over the environment
    let both = bin()
        .args(["run-dj", "--n", "3", "--oracle", "random-balanced", "--seed", "778"])
        .env("CAVITY_DJ_SEED", "777")
        .output()
        .unwrap();
    assert!(stdout_of(&both).contains("\"seed\":778"));

    let bad_env = bin()
        .args(["run-dj", "--n", "3", "--oracle", "random-balanced"])
        .env("CAVITY_DJ_SEED", "not-a-number")
        .output()
        .unwrap();
    assert_eq!(bad_env.status.code(), Some(1));
}

#[test]
fn csv_format_is_flat_and_deterministic() {
    let args = ["feasibility", "--phi", "pi", "--n", "3", "--format", "csv"];
    let first = run(&args);
    assert_eq!(first.status.code(), Some(0));
    let text = stdout_of(&first);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("key,value"));
    assert!(text.contains("report.verdict,feasible"));
    assert!(text.contains("report.tau_per_atom,8.0000000000000007e-5"));
    assert_eq!(first.stdout, run(&args).stdout);
}

#[test]
fn feasibility_defaults_match_hardware_reference() {
    let out = run(&["feasibility", "--phi", "pi", "--n", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    assert!(text.contains("\"tau_per_atom\":8.0000000000000007e-5"), "got: {text}");
    assert!(text.contains("\"verdict\":\"feasible\""));
    assert!(text.contains("\"max_feasible_n\":12"));

    let out = run(&["feasibility", "--phi", "pi", "--n", "200"]);
    assert!(stdout_of(&out).contains("\"verdict\":\"infeasible\""));
}

#[test]
fn shot_counts_sum_to_requested_shots() {
    let out = run(&[
        "run-dj", "--n", "2", "--oracle", "constant1", "--mode", "two-level",
        "--shots", "500", "--seed", "9",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(stdout_of(&out).trim()).unwrap();
    assert_eq!(report["shots"]["requested"], 500);
    let counts = report["shots"]["counts"].as_object().unwrap();
    let total: u64 = counts.values().map(|v| v.as_u64().unwrap()).sum();
    assert_eq!(total, 500);
    // constant oracle: every shot lands on the all-zeros string
    assert_eq!(counts["00"], 500);
}

#[test]
fn cat_prep_reports_postselection_odds() {
    let out = run(&["cat-prep", "--alpha", "2.0", "--seed", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(stdout_of(&out).trim()).unwrap();
    let p = report["postselect_probability"].as_f64().unwrap();
    assert!((p - 0.49983226868604874).abs() < 1e-10, "p = {p}");
    assert_eq!(report["targeted"], "f");
    let detected = report["detected"].as_str().unwrap();
    let postselected = report["postselected"].as_bool().unwrap();
    assert_eq!(postselected, detected == "f");
    if postselected {
        assert!(report["fidelity_vs_odd_cat"].as_f64().unwrap() > 0.999);
        assert_eq!(report["status"], "ok");
    } else {
        assert_eq!(report["status"], "postselection failed");
    }
}

#[test]
fn help_and_version_exit_0() {
    for args in [&["--help"][..], &["--version"][..], &["run-dj", "--help"][..]] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(0), "args {args:?}");
        assert!(!out.stdout.is_empty());
        assert!(out.stderr.is_empty());
    }
    // no subcommand is a usage error
    let out = run(&[]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn prepare_cavity_reports_exact_superposition() {
    let out = run(&["prepare-cavity"]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(stdout_of(&out).trim()).unwrap();
    assert!((report["purity"].as_f64().unwrap() - 1.0).abs() < 1e-10);
    assert!((report["fidelity_vs_minus"].as_f64().unwrap() - 1.0).abs() < 1e-12);
    let amps = report["cavity_amplitudes"].as_array().unwrap();
    assert_eq!(amps.len(), 2);
}
