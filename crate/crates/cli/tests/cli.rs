use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn fixture(rel: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(rel)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_combman"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_combman"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child
        .stdin
        .take()
        .unwrap()
        .write_all(input.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn torus_blowup_from_one_square() {
    let path = fixture("one-square.json");
    let out = run(&["pcs", "blowup", "-n", "2", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["counts"], serde_json::json!([1, 2, 1]));
    let beta = v["beta"].as_object().unwrap();
    let edges: Vec<&str> = v["blowup"]["cubes"]["1"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e.as_str().unwrap())
        .collect();
    assert_eq!(edges.len(), 2);
    for e in edges {
        assert_eq!(beta[e], "e");
    }
}

#[test]
fn verify_passes_on_the_y_graph() {
    let path = fixture("pcs/y-graph.json");
    let out = run(&["pcs", "verify", "-n", "1", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["input_euclidean"], false);
}

#[test]
fn euclid_fails_with_a_counterexample() {
    let path = fixture("pcs/y-graph.json");
    let out = run(&["pcs", "euclid", "-n", "1", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(json(&out)["counterexample"].is_string());
}

#[test]
fn validate_reports_violations_with_exit_one() {
    // A 1-cube whose face is a 1-cube.
    let bad = r#"{"dim_bound":1,"cubes":{"1":["e","f"]},"faces":[{"cube":"e","word":"-","targets":["f"]}]}"#;
    let out = run_stdin(&["pcs", "validate", "-"], bad);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["valid"], false);
    assert!(v["violation"].is_object());
}

#[test]
fn malformed_input_exits_with_two() {
    for args in [
        &["aut", "lang", "-"][..],
        &["pcs", "validate", "-"][..],
        &["aut", "cofrep", "-"][..],
    ] {
        let out = run_stdin(args, "{not json");
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty());
    }
    assert_eq!(run(&["pcs", "brick", "-e", "10x"]).status.code(), Some(2));
    assert_eq!(run(&["rx", "compile", "(a"]).status.code(), Some(2));
    assert_eq!(
        run(&["aut", "lang", "/nonexistent/file.json"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn brick_exports() {
    let out = run(&["pcs", "brick", "-e", "10", "--format", "dot"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stdout)
        .unwrap()
        .starts_with("digraph"));
    let out = run(&["pcs", "brick", "-e", "11", "--format", "tikz"]);
    assert_eq!(out.status.code(), Some(0));
    let out = run(&["pcs", "brick", "-e", "1"]);
    assert_eq!(json(&out)["cubes"]["0"].as_array().unwrap().len(), 1);
}

#[test]
fn regex_compile_separates_from_naive_glue() {
    let out = run(&["rx", "compile", "a*b*", "-L", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let words: Vec<String> = serde_json::from_value(json(&out)["words"].clone()).unwrap();
    assert_eq!(words, ["", "a", "aa", "ab", "b", "bb"]);

    let path = fixture("naive-glue.json");
    let out = run(&["aut", "lang", "-L", "2", path.to_str().unwrap()]);
    let words: Vec<String> = serde_json::from_value(json(&out)["words"].clone()).unwrap();
    assert!(words.contains(&"ba".to_string()));
}

#[test]
fn ascii_regex_flag() {
    let out = run(&["rx", "compile", "--ascii", "0|()", "-L", "1"]);
    assert_eq!(json(&out)["words"], serde_json::json!([""]));
}

#[test]
fn automaton_pipeline() {
    let path = fixture("automata/intro-loops.json");
    let p = path.to_str().unwrap();
    let out = run(&["aut", "cofrep", p]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["report"]["certificate_replays"], true);
    let out = run(&["aut", "verify", "-L", "5", p]);
    assert_eq!(out.status.code(), Some(0));
    let out = run(&["aut", "normalize", p]);
    assert_eq!(out.status.code(), Some(0));
    let normal = serde_json::to_string(&json(&out)).unwrap();
    let out = run_stdin(&["aut", "conditions", "-"], &normal);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn conditions_witness() {
    let path = fixture("naive-glue.json");
    let out = run(&["aut", "conditions", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["witness"]["condition"], "initial_has_in_edge");
}

#[test]
fn fuzz_is_deterministic() {
    let args = ["rx", "fuzz", "--seed", "5", "--count", "30", "-L", "5"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(String::from_utf8(a.stderr).unwrap().trim(), "0 mismatches");
}

#[test]
fn toolkit_appendix_holds() {
    let out = run(&["toolkit", "appendix", "--seed", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert!(v["precubical"]["checks"].as_u64().unwrap() > 100);
    assert!(v["automata"]["failures"].as_array().unwrap().is_empty());
}
