//! End-to-end tests against the compiled binary.

use std::io::Write as _;
use std::process::{Command, Output, Stdio};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_feynman"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn run_ok(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "feynman {args:?} exited {:?}: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("utf-8 output")
}

fn exit_code(args: &[&str]) -> i32 {
    run(args).status.code().expect("exit code")
}

const BUILTINS: &[&str] = &[
    "cycle:3",
    "cycle:4",
    "k4",
    "bouquet:1",
    "bouquet:2",
    "bouquet:3",
    "theta_chain:2",
    "theta_chain:3",
    "triple_edge_cycle:4",
];

#[test]
fn counts_oracle_on_square_reports_two_plus_classes() {
    let out = run_ok(&["counts", "--builtin", "cycle:4", "--max-n", "8", "--oracle"]);
    let row4: Vec<&str> = out
        .lines()
        .find(|l| l.starts_with("4\t"))
        .expect("row for N = 4")
        .split('\t')
        .collect();
    assert_eq!(row4[5], "2", "theta+ column");
    assert_eq!(row4[8], "-2", "omega column");
}

#[test]
fn verify_bouquet_three_passes() {
    let out = run_ok(&["verify", "--builtin", "bouquet:3", "--max-n", "12"]);
    assert!(!out.contains("FAIL"));
    assert!(out.lines().count() > 10);
}

#[test]
fn negative_max_n_is_a_usage_error() {
    assert_eq!(
        exit_code(&["zeta", "--which", "kw", "--max-n", "-1", "--builtin", "cycle:3"]),
        2
    );
}

#[test]
fn zero_max_n_is_a_usage_error() {
    assert_eq!(exit_code(&["counts", "--builtin", "cycle:3", "--max-n", "0"]), 2);
}

#[test]
fn generate_then_verify_round_trips_every_builtin() {
    for builtin in BUILTINS {
        let json = run_ok(&["generate", "--builtin", builtin]);
        let mut child = bin()
            .args(["verify", "--max-n", "6"])
            .stdin(Stdio::piped())
            .stdout(Stdio::null())
            .stderr(Stdio::piped())
            .spawn()
            .expect("spawn verify");
        child
            .stdin
            .take()
            .expect("stdin handle")
            .write_all(json.as_bytes())
            .expect("feed graph json");
        let out = child.wait_with_output().expect("verify finishes");
        assert!(
            out.status.success(),
            "{builtin}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
    }
}

#[test]
fn json_output_reparses_and_is_byte_identical() {
    let args = ["counts", "--builtin", "k4", "--max-n", "6", "--format", "json"];
    let first = run_ok(&args);
    let second = run_ok(&args);
    assert_eq!(first, second);
    let value: serde_json::Value = serde_json::from_str(&first).expect("valid json");
    let rows = value["rows"].as_array().expect("rows array");
    assert_eq!(rows.len(), 6);
    assert_eq!(rows[2]["thetaPlus"], serde_json::json!("8"));
}

#[test]
fn unknown_family_is_an_input_error() {
    assert_eq!(exit_code(&["generate", "--builtin", "nope:3"]), 2);
}

#[test]
fn builtin_conflicts_with_input() {
    assert_eq!(
        exit_code(&["counts", "--builtin", "cycle:3", "--input", "x.json"]),
        2
    );
}

#[test]
fn file_input_works() {
    let json = run_ok(&["generate", "--builtin", "k4"]);
    let path = std::env::temp_dir().join("feynman-cli-test-k4.json");
    std::fs::write(&path, json).expect("write temp graph");
    let out = run_ok(&["info", "--input", path.to_str().expect("utf-8 path")]);
    assert!(out.contains("vertices\t4"));
    assert!(out.contains("edges\t6"));
    std::fs::remove_file(&path).ok();
}

#[test]
fn malformed_graph_json_is_an_input_error() {
    let mut child = bin()
        .args(["info"])
        .stdin(Stdio::piped())
        .stdout(Stdio::null())
        .stderr(Stdio::null())
        .spawn()
        .expect("spawn info");
    child
        .stdin
        .take()
        .expect("stdin handle")
        .write_all(b"{\"vertices\": [], \"surprise\": 1}")
        .expect("feed bad json");
    let status = child.wait().expect("info finishes");
    assert_eq!(status.code(), Some(2));
}

#[test]
fn bad_tolerance_env_is_an_input_error() {
    let out = bin()
        .args(["counts", "--builtin", "cycle:3"])
        .env("FW_TOLERANCE", "not-a-number")
        .output()
        .expect("binary runs");
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn tolerance_env_override_is_honored() {
    let out = bin()
        .args(["counts", "--builtin", "cycle:3", "--max-n", "4"])
        .env("FW_TOLERANCE", "1e-9")
        .output()
        .expect("binary runs");
    assert!(out.status.success());
}

#[test]
fn matrices_prints_twelve_significant_digits() {
    let out = run_ok(&["matrices", "--builtin", "cycle:3"]);
    assert!(out.contains("5.00000000000e-1"), "{out}");
    assert!(out.contains("8.66025403784e-1"), "{out}");
}

#[test]
fn witt_classical_table() {
    let out = run_ok(&["witt", "--rank", "2", "--max-n", "3"]);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[1], "1\t2");
    assert_eq!(lines[2], "2\t1");
    assert_eq!(lines[3], "3\t2");
}

#[test]
fn witt_requires_generators() {
    assert_eq!(exit_code(&["witt", "--max-n", "3"]), 2);
}

#[test]
fn lie_dims_reports_matches_on_every_builtin() {
    for builtin in BUILTINS {
        let out = run_ok(&["lie-dims", "--builtin", builtin, "--max-n", "8"]);
        assert!(!out.contains('✗'), "{builtin}: {out}");
    }
}

#[test]
fn euler_square_column_squares_the_polynomial() {
    let out = run_ok(&["euler", "--builtin", "theta_chain:2", "--max-n", "4"]);
    let lines: Vec<&str> = out.lines().collect();
    // E = (1 + z^2)^2, E^2 = (1 + z^2)^4.
    assert_eq!(lines[1], "0\t1\t1");
    assert_eq!(lines[3], "2\t2\t4");
    assert_eq!(lines[5], "4\t1\t6");
}

#[test]
fn zeta_series_of_triangle() {
    let out = run_ok(&["zeta", "--which", "kw", "--max-n", "6", "--builtin", "cycle:3"]);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[4], "3\t-2");
    assert_eq!(lines[7], "6\t3");
    let ihara = run_ok(&["zeta", "--which", "ihara", "--max-n", "6", "--builtin", "cycle:3"]);
    assert!(ihara.lines().any(|l| l == "3\t2"));
}
