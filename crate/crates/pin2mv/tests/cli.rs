use std::process::{Command, Output};

fn pin2mv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pin2mv"))
        .args(args)
        .output()
        .expect("binary runs")
}

#[test]
fn small_sweep_passes_with_json() {
    let out = pin2mv(&[
        "verify", "all", "--kmax", "4", "--pmax", "20", "--qmax", "40", "--mmax", "8",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["suite"], "all");
    assert_eq!(v["pass"], true);
    assert_eq!(v["params"]["kmax"], 4);
    let item = &v["items"][0];
    for field in ["key", "expected", "computed", "pass", "citation"] {
        assert!(item.get(field).is_some(), "{field}");
    }
}

#[test]
fn empty_k_sweep_passes() {
    let out = pin2mv(&["verify", "appendix-a", "--kmax", "0"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["items"].as_array().unwrap().len(), 0);
}

#[test]
fn appendix_counts_seven_per_k() {
    let out = pin2mv(&["verify", "appendix-a", "--kmax", "10", "--format", "tsv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 1 + 7 * 9);
    assert!(text.starts_with("key\texpected\tcomputed\tpass\tcitation\n"));
}

#[test]
fn unknown_suite_is_usage_error() {
    assert_eq!(pin2mv(&["verify", "nonsense"]).status.code(), Some(2));
}

#[test]
fn degree_bound_flag_is_recorded() {
    let out = pin2mv(&["verify", "ro", "--kmax", "2", "--deg-bound", "0"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["params"]["deg_bound"], 0);
    assert_eq!(v["items"][1]["computed"], "witness 2 for all degP <= 0");
}

#[test]
fn jobs_do_not_change_output() {
    let args = |j: &'static str| {
        [
            "verify", "all", "--kmax", "8", "--pmax", "64", "--qmax", "128", "--jobs", j,
        ]
    };
    let a = pin2mv(&args("1"));
    let b = pin2mv(&args("3"));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn writes_to_out_path() {
    let dir = std::env::temp_dir().join(format!("pin2mv-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("stems.json");
    let out = pin2mv(&["verify", "stems", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["suite"], "stems");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn diagram_text_and_dot() {
    let out = pin2mv(&["diagram", "X(11)", "0", "8"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        "cells: 1 2 3 5 6 7\n1 -[2]-> 2\n2 -[eta^2]-> 5\n3 -[nu]-> 7\n5 -[2]-> 6\n"
    );
    let dot = pin2mv(&["diagram", "X(4)", "0", "4", "--dot"]);
    assert!(String::from_utf8(dot.stdout)
        .unwrap()
        .starts_with("graph \"X4\" {"));
    assert_eq!(
        pin2mv(&["diagram", "Y(4)", "0", "4"]).status.code(),
        Some(2)
    );
}
