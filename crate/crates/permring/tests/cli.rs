//! Drives the compiled binary end to end: output shape in both formats,
//! exit codes on bad input, budget plumbing, and the selftest battery.

use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_permring"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary should run")
}

fn stdout(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).into_owned()
}

fn stderr(output: &Output) -> String {
    String::from_utf8_lossy(&output.stderr).into_owned()
}

const FLAGSHIP: &[&str] = &[
    "--group", "S4", "--subgroup", "stab:4", "--category", "stable", "--prime", "2",
];

#[test]
fn analyze_text_flagship() {
    let output = run(&[&["analyze"], FLAGSHIP, &["--oracle"]].concat());
    assert!(output.status.success(), "stderr: {}", stderr(&output));
    let text = stdout(&output);
    assert!(text.contains("group: S4 (order 24, degree 4)"));
    assert!(text.contains("subgroup: stab:4 (order 6, index 4)"));
    assert!(text.contains("degree: 2"));
    assert!(text.contains("quasi_galois: true"));
    assert!(text.contains("constant_degree: true"));
    assert!(text.contains("closure: order 2"));
    assert!(text.contains("oracle degree: ok (both 2)"));
    assert!(!text.contains("mismatch"));
}

#[test]
fn analyze_is_deterministic_modulo_timing() {
    let strip = |s: String| -> String {
        s.lines()
            .filter(|l| !l.starts_with("timing_ms"))
            .collect::<Vec<_>>()
            .join("\n")
    };
    let first = strip(stdout(&run(&[&["analyze"], FLAGSHIP].concat())));
    let second = strip(stdout(&run(&[&["analyze"], FLAGSHIP].concat())));
    assert!(!first.is_empty());
    assert_eq!(first, second);
}

#[test]
fn analyze_json_fields() {
    let output = run(&[&["analyze"], FLAGSHIP, &["--format", "json"]].concat());
    assert!(output.status.success());
    let value: serde_json::Value = serde_json::from_str(&stdout(&output)).unwrap();
    assert_eq!(value["degree"], 2);
    assert_eq!(value["quasi_galois"], true);
    assert_eq!(value["is_zero"], false);
    assert_eq!(value["group"]["order"], 24);
}

#[test]
fn degree_of_trivial_subgroup_is_group_order() {
    let output = run(&["degree", "--group", "S3", "--subgroup", "gens:"]);
    assert!(output.status.success());
    assert_eq!(stdout(&output).trim(), "degree: 6");
}

#[test]
fn tower_lists_every_level() {
    let output = run(&["tower", "--group", "S3", "--subgroup", "stab:1"]);
    assert!(output.status.success());
    let text = stdout(&output);
    assert!(text.contains("tower: degree 3"));
    for level in 0..=3 {
        assert!(text.contains(&format!("tower level {level}:")));
    }
}

#[test]
fn closure_json_keys_are_sorted() {
    let output = run(&[&["closure"], FLAGSHIP, &["--format", "json"]].concat());
    assert!(output.status.success());
    let text = stdout(&output);
    let value: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(value["order"], 2);
    let positions: Vec<usize> = ["constant_degree", "generators", "index", "order", "witness"]
        .iter()
        .map(|k| text.find(&format!("\"{k}\"")).unwrap())
        .collect();
    let mut sorted = positions.clone();
    sorted.sort_unstable();
    assert_eq!(positions, sorted);
}

#[test]
fn support_reports_prime_and_classes() {
    let output = run(&[&["support"], FLAGSHIP].concat());
    assert!(output.status.success());
    assert!(stdout(&output).starts_with("support: p = 2"));
}

#[test]
fn endos_of_normal_subgroup_equal_index() {
    let output = run(&["endos", "--group", "C6", "--subgroup", "gens:"]);
    assert!(output.status.success());
    assert_eq!(stdout(&output).trim(), "endomorphisms: 6");
}

#[test]
fn out_of_range_stabilizer_point_fails() {
    let output = run(&["degree", "--group", "S4", "--subgroup", "stab:9"]);
    assert_eq!(output.status.code(), Some(1));
    let err = stderr(&output);
    assert!(err.starts_with("error:"), "stderr: {err}");
    assert!(err.contains("stab point 9"));
}

#[test]
fn stable_category_requires_a_prime() {
    let output = run(&[
        "degree", "--group", "S4", "--subgroup", "stab:4", "--category", "stable",
    ]);
    assert_eq!(output.status.code(), Some(1));
    assert!(stderr(&output).contains("prime"));
}

#[test]
fn budget_env_var_limits_the_tower() {
    let output = bin()
        .args(["tower", "--group", "S4", "--subgroup", "gens:"])
        .env("PERMRING_BUDGET", "10")
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(1));
    assert!(stderr(&output).contains("budget"));
}

#[test]
fn budget_flag_overrides_the_env_var() {
    let output = bin()
        .args([
            "tower", "--group", "C2xC2", "--subgroup", "gens:", "--budget", "500000",
        ])
        .env("PERMRING_BUDGET", "10")
        .output()
        .unwrap();
    assert!(output.status.success(), "stderr: {}", stderr(&output));
    assert!(stdout(&output).contains("tower: degree 4"));
}

#[test]
fn malformed_budget_env_var_is_rejected() {
    let output = bin()
        .args(["degree", "--group", "S3", "--subgroup", "gens:"])
        .env("PERMRING_BUDGET", "plenty")
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(1));
    assert!(stderr(&output).contains("PERMRING_BUDGET"));
}

#[test]
fn selftest_battery_passes() {
    let output = run(&["selftest"]);
    assert!(output.status.success(), "stderr: {}", stderr(&output));
    let text = stdout(&output);
    assert!(text.contains(", 0 failed"));
    assert!(text.lines().filter(|l| l.starts_with("ok  ")).count() > 10);
    assert!(!text.contains("FAIL"));
}

#[test]
fn selftest_accepts_a_config_file() {
    let dir = std::env::temp_dir().join("permring-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("battery.toml");
    std::fs::write(&path, "battery_groups = [\"S3\"]\npoint_budget = 100000\n").unwrap();
    let output = run(&["selftest", "--config", path.to_str().unwrap(), "--format", "json"]);
    assert!(output.status.success(), "stderr: {}", stderr(&output));
    let value: serde_json::Value = serde_json::from_str(&stdout(&output)).unwrap();
    assert_eq!(value["failed"], 0);
    assert!(value["checks"].as_array().unwrap().len() > 3);
}

#[cfg(unix)]
#[test]
fn broken_pipe_ends_the_run_quietly() {
    use std::process::Stdio;
    // the json tower of an index-8 coset space is far larger than a pipe
    // buffer, so closing the read end mid-write is guaranteed
    let mut child = bin()
        .args([
            "tower", "--group", "C2xC2xC2", "--subgroup", "gens:", "--format", "json",
        ])
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    drop(child.stdout.take());
    let status = child.wait().unwrap();
    assert_eq!(status.code(), Some(0));
}

#[test]
fn missing_config_file_reports_the_path() {
    let output = run(&["selftest", "--config", "/nonexistent/battery.toml"]);
    assert_eq!(output.status.code(), Some(1));
    assert!(stderr(&output).contains("/nonexistent/battery.toml"));
}
