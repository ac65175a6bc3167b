use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::{json, Value};
use tempfile::TempDir;

fn respom(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_respom"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write(dir: &TempDir, name: &str, doc: &Value) -> PathBuf {
    let path = dir.path().join(name);
    fs::write(&path, doc.to_string()).unwrap();
    path
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

fn stdout_json(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "exit {:?}, stderr: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("JSON on stdout")
}

/// Asserts the exit code and a single-line JSON diagnostic on stderr.
fn expect_failure(out: &Output, code: i32) -> Value {
    assert_eq!(out.status.code(), Some(code), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let err = String::from_utf8(out.stderr.clone()).unwrap();
    assert_eq!(err.trim_end().lines().count(), 1, "multi-line diagnostic: {err}");
    let diag: Value = serde_json::from_str(err.trim_end()).expect("JSON diagnostic");
    assert_eq!(diag["exit"], code);
    diag
}

fn chain_problem() -> Value {
    json!({
        "algebra": {"kind": "tropical"},
        "variables": [{"name": "v1", "domain": ["a", "b"]}, {"name": "v2", "domain": ["a", "b"]}],
        "constraints": [
            {"id": "c1", "scope": ["v1"], "table": [
                {"assign": ["a"], "value": 1}, {"assign": ["b"], "value": 4}]},
            {"id": "c2", "scope": ["v1", "v2"], "table": [
                {"assign": ["a", "a"], "value": 5}, {"assign": ["a", "b"], "value": 0},
                {"assign": ["b", "a"], "value": 1}, {"assign": ["b", "b"], "value": 2}]}
        ]
    })
}

/// Two constraints on `v` whose other variables force a split at `z = 2`;
/// over `v` alone they are the tables {3, 5} and {2, 0}.
fn split_problem() -> Value {
    json!({
        "algebra": {"kind": "tropical"},
        "variables": [
            {"name": "a1", "domain": ["only"]},
            {"name": "a2", "domain": ["only"]},
            {"name": "v", "domain": ["p", "q"]}
        ],
        "constraints": [
            {"id": "c1", "scope": ["a1", "v"], "table": [
                {"assign": ["only", "p"], "value": 3}, {"assign": ["only", "q"], "value": 5}]},
            {"id": "c2", "scope": ["a2", "v"], "table": [
                {"assign": ["only", "p"], "value": 2}, {"assign": ["only", "q"], "value": 0}]}
        ]
    })
}

#[test]
fn solve_be_on_the_chain_instance() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "chain.json", &chain_problem());
    let out = stdout_json(&respom(&["solve", "--input", p(&input), "--algorithm", "be", "--seed", "7"]));
    assert_eq!(out["algorithm"], "be");
    assert_eq!(out["seed"], 7);
    assert_eq!(out["bound"], 1);
    assert_eq!(out["solutions"], json!([{"assignment": {"v1": "a", "v2": "b"}, "value": 1}]));
    assert_eq!(out["diagnostics"]["order"], json!(["v1", "v2"]));
    assert_eq!(out["diagnostics"]["buckets"][0]["variable"], "v2");
}

#[test]
fn dfbb_matches_be_under_both_policies() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "chain.json", &chain_problem());
    let be = stdout_json(&respom(&["solve", "--input", p(&input)]));
    let trivial = stdout_json(&respom(&["solve", "--input", p(&input), "--algorithm", "dfbb", "--ub", "trivial"]));
    let mbe = stdout_json(&respom(&[
        "solve", "--input", p(&input), "--algorithm", "dfbb", "--ub", "mbe", "--z", "2",
    ]));
    for out in [&trivial, &mbe] {
        assert_eq!(out["solutions"], be["solutions"]);
        assert_eq!(out["bound"], be["bound"]);
    }
    assert_eq!(mbe["diagnostics"]["ub"], json!({"policy": "mbe", "z": 2}));
}

#[test]
fn z_flag_policy() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "chain.json", &chain_problem());
    expect_failure(&respom(&["solve", "--input", p(&input), "--z", "2"]), 2);
    expect_failure(&respom(&["solve", "--input", p(&input), "--algorithm", "dfbb", "--ub", "mbe"]), 2);
    expect_failure(&respom(&["bound", "--input", p(&input)]), 2);
    expect_failure(&respom(&["check", "--algebra", "{\"kind\":\"chain\",\"n\":2}", "--z", "1"]), 2);
}

#[test]
fn malformed_and_invalid_files_exit_2() {
    let dir = TempDir::new().unwrap();
    let bad = dir.path().join("bad.json");
    fs::write(&bad, "{ not json").unwrap();
    let diag = expect_failure(&respom(&["solve", "--input", p(&bad)]), 2);
    assert_eq!(diag["error"], "parse");

    let mut doc = chain_problem();
    doc["constraints"][0]["scope"] = json!(["ghost"]);
    let invalid = write(&dir, "invalid.json", &doc);
    let diag = expect_failure(&respom(&["solve", "--input", p(&invalid)]), 2);
    assert_eq!(diag["error"], "invalid-problem");
    assert!(diag["diagnostics"][0].as_str().unwrap().contains("ghost"));

    let missing = dir.path().join("missing.json");
    expect_failure(&respom(&["solve", "--input", p(&missing)]), 2);
}

#[test]
fn bound_at_full_width_equals_be() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "chain.json", &chain_problem());
    let be = stdout_json(&respom(&["solve", "--input", p(&input)]));
    let mbe = stdout_json(&respom(&["bound", "--input", p(&input), "--z", "2"]));
    assert_eq!(mbe["algorithm"], "mbe");
    assert_eq!(mbe["bound"], be["bound"]);
    assert_eq!(mbe["diagnostics"]["buckets"][0]["mini_buckets"], json!([["c2"]]));
    let diag = expect_failure(&respom(&["bound", "--input", p(&input), "--z", "1"]), 2);
    assert_eq!(diag["error"], "infeasible-z");
}

#[test]
fn bound_against_a_reference_optimum() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "chain.json", &chain_problem());
    let reference = dir.path().join("optimum.json");
    let out = respom(&["solve", "--input", p(&input), "--output", p(&reference)]);
    assert!(out.status.success() && out.stdout.is_empty());

    let ok = stdout_json(&respom(&["bound", "--input", p(&input), "--z", "2", "--reference", p(&reference)]));
    assert_eq!(ok["reference"], json!({"value": 1, "dominated": true}));

    // A claimed optimum better than the bound is a failed check.
    let better = write(&dir, "better.json", &json!(0));
    let out = respom(&["bound", "--input", p(&input), "--z", "2", "--reference", p(&better)]);
    expect_failure(&out, 1);
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["reference"]["dominated"], false);
}

#[test]
fn distance_on_the_split_bucket() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "split.json", &split_problem());
    let out = stdout_json(&respom(&["distance", "--input", p(&input), "--z", "2", "--variable", "v"]));
    let d = &out["diagnostics"]["distances"][0];
    assert_eq!(d["mini_buckets"], json!([["c1"], ["c2"]]));
    let cell = |key: &str| d[key]["table"][0]["value"].clone();
    assert_eq!(cell("exact"), 5);
    assert_eq!(cell("mu"), 3);
    assert_eq!(cell("distance"), 2);
    assert_eq!(d["refined"].as_array().unwrap().len(), 2);
    assert_eq!(cell("composed"), 0);

    // One mini-bucket: the distance is the identity.
    let wide = stdout_json(&respom(&["distance", "--input", p(&input), "--z", "3", "--variable", "v"]));
    assert_eq!(wide["diagnostics"]["distances"][0]["distance"]["table"][0]["value"], 0);

    expect_failure(&respom(&["distance", "--input", p(&input), "--z", "2", "--variable", "nope"]), 2);
}

#[test]
fn check_command() {
    let chain = stdout_json(&respom(&["check", "--algebra", r#"{"kind":"chain","n":5}"#, "--exhaustive"]));
    assert_eq!(chain["mode"], "exhaustive");
    assert!(chain["laws"].as_array().unwrap().iter().all(|l| l["status"] != "fail"));

    let lex = stdout_json(&respom(&[
        "check", "--algebra", r#"{"kind":"lex","base":{"kind":"chain","n":3},"k":2}"#, "--exhaustive",
    ]));
    let passed = |law: &str| lex["laws"].as_array().unwrap().iter().any(|l| l["law"] == law && l["status"] == "pass");
    assert!(passed("adjunction") && passed("residual-oracle") && passed("lex-limit"));

    let flat = stdout_json(&respom(&["check", "--algebra", r#"{"kind":"flat-capped","n":4}"#]));
    assert_eq!(flat["residuated"], false);
    assert_eq!(flat["collapsing"]["equal"], false);
    assert_eq!(flat["collapsing"]["weakly_collapsing"], json!(["bot", "top"]));

    let diag = expect_failure(&respom(&["check", "--algebra", r#"{"kind":"tropical"}"#, "--exhaustive"]), 2);
    assert_eq!(diag["error"], "unsupported");
    expect_failure(&respom(&["check", "--algebra", r#"{"kind":"nope"}"#]), 2);
}

#[test]
fn check_reads_the_algebra_of_a_problem_file() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "chain.json", &chain_problem());
    let out = stdout_json(&respom(&["check", "--input", p(&input), "--seed", "3"]));
    assert_eq!(out["algebra"], json!({"kind": "tropical"}));
    assert_eq!(out["seed"], 3);
}

#[test]
fn algebra_flag_overrides_the_file() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "chain.json", &chain_problem());
    let out = stdout_json(&respom(&["solve", "--input", p(&input), "--algebra", r#"{"kind":"chain","n":6}"#]));
    assert_eq!(out["algebra"], json!({"kind": "chain", "n": 6}));
    assert_eq!(out["bound"], 1);
    // 5 is outside Chain(2).
    expect_failure(&respom(&["solve", "--input", p(&input), "--algebra", r#"{"kind":"chain","n":2}"#]), 2);
}

#[test]
fn identical_inputs_give_identical_bytes() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "split.json", &split_problem());
    for args in [
        vec!["solve", "--input", p(&input), "--order", "min-degree"],
        vec!["solve", "--input", p(&input), "--algorithm", "dfbb"],
        vec!["distance", "--input", p(&input), "--z", "2", "--variable", "v"],
        vec!["check", "--algebra", r#"{"kind":"extended-int"}"#, "--seed", "11"],
    ] {
        let (a, b) = (respom(&args), respom(&args));
        assert!(a.status.success(), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn oversized_elimination_exits_3() {
    let leaves: Vec<String> = (1..=12).map(|i| format!("x{i:02}")).collect();
    let mut variables: Vec<Value> = leaves.iter().map(|n| json!({"name": n, "domain": ["a", "b", "c", "d"]})).collect();
    variables.push(json!({"name": "z", "domain": ["a", "b", "c", "d"]}));
    let constraints: Vec<Value> = leaves
        .iter()
        .map(|n| json!({"id": format!("c{n}"), "scope": [n, "z"], "default": 1}))
        .collect();
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "star.json", &json!({"algebra": {"kind": "tropical"}, "variables": variables, "constraints": constraints}));
    let diag = expect_failure(&respom(&["solve", "--input", p(&input)]), 3);
    assert_eq!(diag["error"], "resource");
}

#[test]
fn help_exits_0() {
    let out = respom(&["--help"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("solve"));
}
