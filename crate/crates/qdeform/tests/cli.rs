//! Black-box tests of the `qdeform` binary: printed values, output
//! formats, and the exit-code contract (0 defined/pass, 1 law failure,
//! 2 undefined, 64 usage, 74 I/O).

use std::process::{Command, Output};

fn qdeform(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qdeform"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("stdout is UTF-8")
}

#[test]
fn eval_prints_values_and_tags() {
    let out = qdeform(&["eval", "ole", "add", "--q", "1", "2", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "5");

    let out = qdeform(&["eval", "ole", "add", "--q", "0.5", "1", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "2.5");

    let out = qdeform(&["eval", "oel", "mul", "--q", "0.5", "4", "9"]);
    assert_eq!(out.status.code(), Some(0));
    let v: f64 = stdout(&out).trim().parse().unwrap();
    assert!((v - 16.0).abs() <= 1e-12);

    // The exp-of-deformed-log map has no value at 0 below the classical
    // point; the tag names the reason and the exit code flags it.
    let out = qdeform(&["eval", "iel", "deform", "--q", "0.5", "0"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stdout(&out).trim().starts_with("undefined("));

    // Negative operands parse without `--`.
    let out = qdeform(&["eval", "ile", "add", "--q", "-1", "-0.25", "0.5"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn usage_errors_exit_64() {
    assert_eq!(qdeform(&["eval", "oel", "frob", "--q", "1", "1", "1"]).status.code(), Some(64));
    assert_eq!(qdeform(&["verify", "everything"]).status.code(), Some(64));
    assert_eq!(qdeform(&["numbers", "--grid", "x:1:0:10"]).status.code(), Some(64));
    assert_eq!(qdeform(&["frobnicate"]).status.code(), Some(64));
    assert_eq!(qdeform(&["--help"]).status.code(), Some(0));
}

#[test]
fn io_errors_exit_74() {
    let out = qdeform(&[
        "numbers",
        "--grid",
        "x:0:1:5",
        "--out",
        "/nonexistent-dir/numbers.csv",
    ]);
    assert_eq!(out.status.code(), Some(74));
}

#[test]
fn numbers_streams_csv_to_stdout() {
    let out = qdeform(&["numbers", "--class", "ile", "--q", "3", "--grid", "x:0:1:5"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("class,q,x,value"));
    assert_eq!(text.lines().count(), 6);
    // Values and grid coordinates carry 17 significant digits.
    assert!(text.contains("2.5000000000000000e-1"));
    // The divergent branch is a literal token, not an empty cell.
    assert!(text.lines().any(|l| l.ends_with(",inf")));
}

#[test]
fn cutoff_map_json_has_stable_shape() {
    let out = qdeform(&[
        "cutoff-map",
        "mul",
        "--q",
        "-1",
        "--grid",
        "x:-1:1:5",
        "--grid",
        "y:-1:1:5",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("{\"columns\":[\"kind\",\"x\",\"y\",\"in_cutoff\"]"));
    let doc: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert!(doc["rows"].as_array().unwrap().len() >= 25);
}

#[test]
fn entropy_two_state_rows_are_per_class() {
    let out = qdeform(&[
        "entropy",
        "two-state",
        "--class",
        "oel",
        "--q",
        "2",
        "--grid",
        "x:0:1:3",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_eq!(text.lines().next(), Some("class,q,p,entropy"));
    assert_eq!(text.lines().count(), 4);
    assert!(text.contains("oel,"));
}

#[test]
fn verify_subsets_pass_and_reports_are_identical_per_seed() {
    let run = |seed: &str| {
        qdeform(&[
            "verify", "arith", "--seed", seed, "--count", "80",
        ])
    };
    let (a, b, other) = (run("42"), run("42"), run("7"));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_ne!(a.stdout, other.stdout);

    let doc: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(doc["suite"], "arith");
    assert_eq!(doc["seed"], 42);
    assert_eq!(doc["all_pass"], true);
    assert!(doc["laws"].as_array().unwrap().len() >= 16);
}

#[test]
fn verify_calc_contains_the_expected_counterexample_entry() {
    let out = qdeform(&["verify", "calc", "--seed", "7", "--count", "60"]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let laws = doc["laws"].as_array().unwrap();
    let ftc = laws
        .iter()
        .find(|l| l["expect_counterexample"] == true)
        .expect("one law passes by exhibiting a counterexample");
    assert_eq!(ftc["pass"], true);
    assert!(ftc["failures"].as_u64().unwrap() > 0);
}

#[test]
fn verify_narrow_classical_band_is_round_off_clean() {
    let out = qdeform(&[
        "verify", "arith", "--q-range", "0.99", "1.01", "--count", "80",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["all_pass"], true);
}
