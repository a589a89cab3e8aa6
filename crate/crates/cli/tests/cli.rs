use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_scattered"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("json output")
}

#[test]
fn rank_of_example_three() {
    let v = json(&["rank", "ex3"]);
    assert_eq!(v["rank"], "2");
    assert_eq!(v["top_ends"], 1);
}

#[test]
fn analyze_box_fixes_the_root() {
    let v = json(&["analyze", "box"]);
    assert_eq!(v["variant"], "fixed_vertex_or_edge");
    assert_eq!(v["evidence"]["kind"], "vertex");
    assert_eq!(v["twins"], "one");
}

#[test]
fn twin_counts() {
    let v = json(&["twins", "lpath oneway antichain{a,b} cycle(a,b)", "--count"]);
    assert_eq!(v["twins"], "exactly(2)");
    let v = json(&["twins", "ex1", "--count"]);
    assert_eq!(v["twins"], "continuum");
}

#[test]
fn twin_families() {
    let v = json(&[
        "twins",
        "lpath oneway antichain{a,b,c} cycle(a,b,c)",
        "--enumerate",
        "3",
    ]);
    assert_eq!(v["family"].as_array().unwrap().len(), 3);
    let v = json(&["twins", "wsum([](succ(box),box))", "--enumerate", "2", "--full"]);
    assert_eq!(v["twins"], "infinite");
    assert_eq!(v["pairwise_distinct"], true);
    assert!(v["family"][0]["term"].is_string());
    let v = json(&["twins", "ex1", "--enumerate", "2", "--seed", "4"]);
    assert_eq!(v["family"].as_array().unwrap().len(), 2);
}

#[test]
fn parse_errors_exit_two_with_a_position() {
    let out = run(&["rank", "wsum("]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("position"));
}

#[test]
fn strict_mode_rejects_unknown_answers() {
    // the preserved end sits inside the dominant first component
    let term = "wsum([wsum(gen(wsum([](box)); succ(sup(succ(_)*2))))](box))";
    let loose = json(&["analyze", term]);
    assert_eq!(loose["twins"], "unknown");
    assert_eq!(run(&["--strict", "analyze", term]).status.code(), Some(1));
    assert!(run(&["--strict", "analyze", "ex1"]).status.success());
}

#[test]
fn truncations() {
    let out = run(&["truncate", "ex1", "--depth", "2", "--format", "dot"]);
    let dot = String::from_utf8(out.stdout).unwrap();
    assert!(dot.starts_with("graph truncation {"));
    assert_eq!(dot.matches("doublecircle").count(), 3);
    let v = json(&["truncate", "wsum([](box))", "--depth", "3"]);
    assert_eq!(v["n"], 4);
    assert_eq!(v["spine"].as_array().unwrap().len(), 4);
}

#[test]
fn oracle_suite_passes() {
    let v = json(&["oracle", "--suite", "counts", "--max-n", "9"]);
    assert_eq!(v["passed"], true);
    let out = run(&["oracle", "--suite", "nonsense"]);
    assert!(!out.status.success());
}

#[test]
fn examples_match_their_expectations() {
    let v = json(&["examples"]);
    let list = v.as_array().unwrap();
    assert_eq!(list.len(), 4);
    for ex in list {
        assert_eq!(
            ex["expected"]["rank"], ex["computed"]["rank"]["rank"],
            "{}",
            ex["name"]
        );
        assert_eq!(ex["expected"]["twins"], ex["computed"]["twins"], "{}", ex["name"]);
    }
}

#[test]
fn output_is_stable() {
    assert_eq!(run(&["analyze", "ex4"]).stdout, run(&["analyze", "ex4"]).stdout);
}

#[test]
fn input_from_a_file() {
    let path = std::env::temp_dir().join(format!("scattered-cli-{}.term", std::process::id()));
    std::fs::write(&path, "wsum([](box))\n").unwrap();
    let v = json(&["rank", &format!("@{}", path.display())]);
    std::fs::remove_file(&path).ok();
    assert_eq!(v["rank"], "1");
}
