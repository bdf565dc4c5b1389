//! End-to-end tests of the `aluthge` binary: exit codes, report shapes,
//! and byte-for-byte determinism.

use std::process::{Command, Output};

fn aluthge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_aluthge"))
        .args(args)
        .env_remove("ALUTHGE_SEED")
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON on stdout")
}

#[test]
fn counterexample_reports_exact_integers() {
    let out = aluthge(&["counterexample"]);
    let v = stdout_json(&out);
    let r = &v["result"];
    assert_eq!(v["config"]["lambda"], 0.5);
    assert!((r["comm_in_sq"].as_f64().unwrap() - 5_796_100.0).abs() < 1e-3);
    assert!((r["comm_out_sq"].as_f64().unwrap() - 5_971_968.0).abs() < 1e-3);
    assert_eq!(r["conjecture_holds"], false);
}

#[test]
fn usage_errors_exit_one() {
    let out = aluthge(&["iterate"]); // neither --input nor --random
    assert_eq!(out.status.code(), Some(1));

    let out = aluthge(&["family-scan", "--s-grid", "nonsense"]);
    assert_eq!(out.status.code(), Some(1));

    let out = aluthge(&["no-such-command"]);
    assert_eq!(out.status.code(), Some(1));

    let out = aluthge(&["counterexample", "--lambda", "1.5"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn help_exits_zero() {
    let out = aluthge(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn iterate_random_matrix_report() {
    let out = aluthge(&["iterate", "--random", "3", "--seed", "5", "--steps", "2000"]);
    let v = stdout_json(&out);
    let r = &v["result"];
    assert_eq!(r["converged"], true);
    assert!(r["limit_normality"].as_f64().unwrap() < 1e-6);
    assert!(r.get("iterates").is_none());

    let out = aluthge(&[
        "iterate", "--random", "3", "--seed", "5", "--steps", "2000", "--verbose",
    ]);
    let v = stdout_json(&out);
    assert!(v["result"].get("iterates").is_some());
}

#[test]
fn iterate_reads_matrix_from_file() {
    let dir = std::env::temp_dir().join("aluthge-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("nilpotent.json");
    std::fs::write(
        &path,
        r#"{"dim":2,"rows":[[[0.0,0.0],[1.0,0.0]],[[0.0,0.0],[0.0,0.0]]]}"#,
    )
    .unwrap();

    let out = aluthge(&["iterate", "--input", path.to_str().unwrap(), "--steps", "5"]);
    let v = stdout_json(&out);
    // the transform annihilates a nilpotent Jordan block in one step
    assert_eq!(v["result"]["converged"], true);
    assert!(v["result"]["limit_normality"].as_f64().unwrap() < 1e-12);
}

#[test]
fn family_scan_csv_has_expected_header() {
    let out = aluthge(&[
        "family-scan", "--lambda-grid", "0.5", "--s-grid", "-0.2:0.2:11",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "eps,s,lambda,den_sq,num_sq,ratio,direct_ratio,abs_discrepancy"
    );
    assert_eq!(lines.count(), 11);
}

#[test]
fn family_scan_json_summary() {
    let out = aluthge(&[
        "family-scan", "--format", "json", "--lambda-grid", "0.5", "--s-grid", "-0.2:0.2:81",
    ]);
    let v = stdout_json(&out);
    let max = v["result"]["max_ratio"].as_f64().unwrap();
    assert!((max - 1.0987).abs() < 1e-2);
}

#[test]
fn heinz_check_reports_tally() {
    let out = aluthge(&["heinz-check", "--trials", "30", "--seed", "1"]);
    assert!(out.status.success());
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("330/330 hold"), "stderr: {err}");
}

#[test]
fn bound_search_is_byte_identical_and_seed_env_works() {
    let a = aluthge(&["bound-search", "--trials", "6", "--seed", "11"]);
    let b = aluthge(&["bound-search", "--trials", "6", "--seed", "11"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);

    let c = Command::new(env!("CARGO_BIN_EXE_aluthge"))
        .args(["bound-search", "--trials", "6"])
        .env("ALUTHGE_SEED", "11")
        .output()
        .unwrap();
    assert_eq!(c.stdout, a.stdout);
}

#[test]
fn upper_check_holds_on_random_matrix() {
    let out = aluthge(&["upper-check", "--random", "4", "--seed", "3", "--lambda", "0.9"]);
    let v = stdout_json(&out);
    assert_eq!(v["result"]["holds"], true);
}
