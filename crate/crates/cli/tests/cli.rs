use std::path::Path;
use std::process::{Command, Output};

use serde_json::{json, Value};
use tempfile::TempDir;

fn golden(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name).display().to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_clusterfold")).args(args).output().unwrap()
}

fn run_with(config: &Value, args: &[&str]) -> Output {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("job.json");
    std::fs::write(&path, config.to_string()).unwrap();
    let path = path.display().to_string();
    let mut all = args.to_vec();
    all.extend(["--config", &path]);
    run(&all)
}

fn stdout_json(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn a3_swap() -> Value {
    json!({"vertices": [1, 2, 3], "edges": [[1, 2], [3, 2]], "automorphism": {"1": 3, "3": 1}})
}

#[test]
fn initquiver_dot_matches_figure() {
    let out = run(&["initquiver", "--dot", "--config", &golden("ijk_quiver.json")]);
    assert!(out.status.success());
    let expected = std::fs::read_to_string(golden("ijk_quiver.dot")).unwrap();
    assert_eq!(String::from_utf8(out.stdout).unwrap(), expected);
}

#[test]
fn initquiver_a2_has_three_vertices() {
    let out = run_with(&json!({"datum": {"finite": "A2"}, "word": [1, 2, 1]}), &["initquiver", "--dot"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.matches("label=\"").count(), 3);
    assert_eq!(text.matches("peripheries=2").count(), 2);
}

#[test]
fn non_reduced_word_is_an_input_error() {
    let out = run_with(&json!({"datum": {"finite": "A2"}, "word": [1, 1]}), &["initquiver"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not reduced"));
}

#[test]
fn fold_a3_swap_gives_rank_two() {
    let v = stdout_json(&run_with(&json!({"quiver": a3_swap()}), &["fold", "--json"]));
    assert_eq!(v["cartan"], json!([[2, -1], [-2, 2]]));
    assert_eq!(v["symmetrizers"], json!([2, 1]));
}

#[test]
fn fold_identity_echoes_symmetric_matrix() {
    let q = json!({"vertices": [1, 2, 3], "edges": [[1, 2], [2, 3]], "automorphism": {}});
    let v = stdout_json(&run_with(&json!({"quiver": q}), &["fold"]));
    assert_eq!(v["cartan"], json!([[2, -1, 0], [-1, 2, -1], [0, -1, 2]]));
}

#[test]
fn fold_rejects_edge_inside_orbit() {
    let q = json!({"vertices": [1, 2], "edges": [[1, 2]], "automorphism": {"1": 2, "2": 1}});
    assert_eq!(run_with(&json!({"quiver": q}), &["fold"]).status.code(), Some(2));
}

#[test]
fn unknown_config_field_is_rejected() {
    let out = run_with(&json!({"datum": {"finite": "A2"}, "wrod": [1]}), &["seed-init"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn missing_config_is_an_input_error() {
    assert_eq!(run(&["seed-init"]).status.code(), Some(2));
    assert_eq!(run(&["seed-init", "--config", "/nonexistent/job.json"]).status.code(), Some(2));
}

#[test]
fn seed_init_dump_shape() {
    let v = stdout_json(&run_with(&json!({"datum": {"finite": "A2"}, "word": [1, 2, 1]}), &["seed-init"]));
    assert_eq!(v["lambda"].as_array().unwrap().len(), 3);
    assert_eq!(v["b"], json!([[0], [-1], [1]]));
    assert_eq!(v["variables"][1]["degree"], json!([1, 1]));
}

#[test]
fn mutate_traces() {
    let job = |m: Value| json!({"datum": {"finite": "A2"}, "word": [1, 2, 1], "mutations": m});
    let empty = stdout_json(&run_with(&job(json!([])), &["mutate"]));
    assert_eq!(empty["trace"].as_array().unwrap().len(), 1);

    let once = stdout_json(&run_with(&job(json!([1])), &["mutate"]));
    assert_eq!(once["trace"].as_array().unwrap().len(), 2);
    assert_eq!(once["trace"][1]["seed"]["variables"][0]["degree"], json!([0, 1]));

    let twice = stdout_json(&run_with(&job(json!([1, 1])), &["mutate"]));
    let trace = twice["trace"].as_array().unwrap();
    assert_eq!(trace[2]["seed"], trace[0]["seed"]);

    assert_eq!(run_with(&job(json!([2])), &["mutate"]).status.code(), Some(2));
}

#[test]
fn enumerate_respects_step_bound() {
    let c2 = json!({"quiver": a3_swap(), "word": [1, 2, 1, 2]});
    let full = stdout_json(&run_with(&c2, &["enumerate"]));
    assert_eq!(full["seeds"], 6);
    assert_eq!(full["partial"], false);
    let cut = stdout_json(&run_with(&c2, &["enumerate", "--max-steps", "3"]));
    assert_eq!(cut["seeds"], 3);
    assert_eq!(cut["partial"], true);
}

#[test]
fn roots_reports_a_convex_order() {
    let v = stdout_json(&run_with(&json!({"datum": {"finite": "B2"}, "word": [1, 2, 1, 2]}), &["roots"]));
    assert_eq!(v["positive_roots"].as_array().unwrap().len(), 4);
    assert_eq!(v["convex"], true);
}

#[test]
fn verify_default_catalog_passes() {
    let out = run(&["verify", "--json"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let lines: Vec<Value> = String::from_utf8(out.stdout)
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert!(lines.iter().any(|r| r["perturbed"] == true && r["status"] == "fail"));
    assert!(lines.iter().all(|r| r["check"].is_string() && r["witness"].is_object()));
}

#[test]
fn verify_planted_negative_control_fails() {
    let entries = json!([{
        "check": "square_identity",
        "datum": {"finite": "A1"},
        "minors": [{"lambda": [1], "lower": [1]}],
        "perturb": true
    }]);
    let out = run_with(&json!({"entries": entries}), &["verify"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8(out.stdout).unwrap().starts_with("FAIL"));
}

#[test]
fn outputs_are_deterministic() {
    let job = json!({"quiver": a3_swap(), "word": [1, 2, 1, 2]});
    let a = run_with(&job, &["enumerate", "--json"]);
    let b = run_with(&job, &["enumerate", "--json"]);
    assert_eq!(a.stdout, b.stdout);
}
