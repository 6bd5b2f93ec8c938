//! End-to-end runs of the `infconv` binary on files written to a temp dir.

use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::{json, Value};
use tempfile::TempDir;

use infconv::io;
use infconv::magma::FiniteMetricMagma;

struct Run {
    code: i32,
    json: Value,
    stdout: String,
    stderr: String,
}

fn run(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_infconv")).args(args).output().expect("binary runs");
    let stdout = String::from_utf8(out.stdout).unwrap();
    Run {
        code: out.status.code().unwrap(),
        json: serde_json::from_str(&stdout).unwrap_or(Value::Null),
        stdout,
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn magma(dir: &TempDir, name: &str, m: &FiniteMetricMagma) -> PathBuf {
    write(dir, name, &io::magma_to_json(m))
}

#[test]
fn classify_cyclic() {
    let dir = TempDir::new().unwrap();
    let m = magma(&dir, "z5.json", &FiniteMetricMagma::cyclic(5));
    let r = run(&["classify", s(&m)]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(r.json["class"], "AbelianGroup");
    assert_eq!(r.json["metric_invariant"], true);
}

#[test]
fn fond0_instance() {
    let dir = TempDir::new().unwrap();
    let m = magma(&dir, "z3.json", &FiniteMetricMagma::cyclic(3));
    let f = write(&dir, "f.json", r#"{"n": 3, "values": ["2", "1", "2"]}"#);
    let g = write(&dir, "g.json", r#"{"n": 3, "values": ["1", "1", "0"]}"#);
    let r = run(&["fond0", s(&m), s(&f), s(&g)]);
    assert_eq!(r.code, 0, "{}", r.stdout);
    assert_eq!(r.json["direction_ii"], json!([1, 2]));
    assert_eq!(r.json["direction_i"], json!(0));
    let c = run(&["convolve", s(&m), s(&f), s(&g), "--at", "0"]);
    assert_eq!(c.json["result"]["values"], json!(["1", "2", "2"]));
    assert_eq!(c.json["attainment"]["minimizing_pairs"], json!([[1, 2]]));
}

#[test]
fn int2_on_quasigroup_fails_with_witness() {
    let dir = TempDir::new().unwrap();
    let m = magma(&dir, "q5.json", &FiniteMetricMagma::subtraction(5));
    let r = run(&["int2", s(&m)]);
    assert_eq!(r.code, 3);
    let hit = r.json["violations"].as_array().unwrap().iter().find(|v| v["triple"] == json!([0, 1, 2])).cloned().unwrap();
    assert_eq!(hit["left"]["values"], json!(["1", "1", "0", "1", "1"]));
    assert_eq!(hit["right"]["values"], json!(["1", "0", "1", "1", "1"]));
    let g = magma(&dir, "z5.json", &FiniteMetricMagma::cyclic(5));
    assert_eq!(run(&["int2", s(&g)]).code, 0);
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    let bad_json = write(&dir, "bad.json", "{ not json");
    let r = run(&["classify", s(&bad_json)]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("line 1"), "{}", r.stderr);
    let bad_metric = write(&dir, "m.json", r#"{"n": 2, "law": [[0,1],[1,0]], "metric": [["0","1"],["2","0"]]}"#);
    let r = run(&["classify", s(&bad_metric)]);
    assert_eq!(r.code, 1);
    assert!(r.stderr.contains("metric"), "{}", r.stderr);
    let proj = magma(&dir, "p.json", &FiniteMetricMagma::left_projection(3));
    assert_eq!(run(&["closure", s(&proj)]).code, 4);
    let f = write(&dir, "f.json", r#"{"n": 3, "values": ["0", "1", "1"]}"#);
    assert_eq!(run(&["unit-check", s(&proj), s(&f)]).code, 4);
    assert_eq!(run(&["no-such-command"]).code, 2);
    assert_eq!(run(&["classify", "/nonexistent/file.json"]).code, 2);
}

#[test]
fn unit_check_and_argmin() {
    let dir = TempDir::new().unwrap();
    let m = magma(&dir, "z5.json", &FiniteMetricMagma::cyclic(5));
    let f = write(&dir, "f.json", r#"{"n": 5, "values": ["7/4", "7/4", "3/4", "7/4", "7/4"]}"#);
    let r = run(&["unit-check", s(&m), s(&f)]);
    assert_eq!(r.json["unit"], true);
    assert_eq!(r.json["certificate"]["inverse"]["values"], json!(["1/4", "1/4", "1/4", "-3/4", "1/4"]));
    assert_eq!(run(&["unit-check", s(&m), s(&f), "--positive"]).json["unit"], false);
    let r = run(&["argmin", s(&m), "--grid", "0,1/2,1"]);
    assert_eq!(r.code, 0);
    assert_eq!(r.json["pairs_checked"], 85 * 85);
}

#[test]
fn iso_and_cancellation() {
    let dir = TempDir::new().unwrap();
    let m = magma(&dir, "z5.json", &FiniteMetricMagma::cyclic(5));
    assert_eq!(run(&["iso-verify", s(&m), s(&m), "--map", "0,2,4,1,3"]).code, 0);
    assert_eq!(run(&["iso-verify", s(&m), s(&m), "--map", "0,2,1,3,4"]).code, 1);
    let z3 = magma(&dir, "z3.json", &FiniteMetricMagma::cyclic(3));
    let r = run(&["cancel-search", s(&z3), "--grid", "0,1"]);
    assert_eq!(r.json["found"], true);
    // Feed the witness back through convolve.
    let w = &r.json["witness"];
    let f = write(&dir, "f.json", &w["f"].to_string());
    let h = write(&dir, "h.json", &w["h"].to_string());
    let g = write(&dir, "g.json", &w["g"].to_string());
    let a = run(&["convolve", s(&z3), s(&f), s(&g)]);
    let b = run(&["convolve", s(&z3), s(&h), s(&g)]);
    assert_eq!(a.json["result"], b.json["result"]);
    assert_ne!(w["f"], w["h"]);
}

#[test]
fn katetov_commands() {
    let dir = TempDir::new().unwrap();
    let sub = write(
        &dir,
        "sub.json",
        r#"{"n": 3, "metric": [["0","1","1"],["1","0","1"],["1","1","0"]], "subset": [0, 1], "values": ["1/2", "1/2"]}"#,
    );
    let r = run(&["katetov", "extend", s(&sub)]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(r.json["extension"]["values"], json!(["1/2", "1/2", "3/2"]));
    let z8 = magma(&dir, "z8.json", &FiniteMetricMagma::cyclic(8));
    assert_eq!(run(&["katetov", "check", s(&z8), "--random", "20"]).code, 0);
    assert_eq!(run(&["katetov", "units", s(&z8)]).code, 0);
    let zero = write(&dir, "zero.json", r#"{"n": 8, "values": ["0","0","0","0","0","0","0","0"]}"#);
    assert_eq!(run(&["katetov", "check", s(&z8), s(&zero), s(&zero)]).code, 1);
}

#[test]
fn sequence_commands() {
    let dir = TempDir::new().unwrap();
    let u = write(&dir, "u.json", r#"{"n": 3, "values": ["1", "0", "1"]}"#);
    let v = write(&dir, "v.json", r#"{"n": 3, "values": ["1", "1", "0"]}"#);
    let r = run(&["cyclic", "conv", "-p", "3", s(&u), s(&v)]);
    assert_eq!(r.json["result"]["values"], json!(["0", "1", "1"]));
    assert_eq!(run(&["cyclic", "conv", "-p", "4", s(&u), s(&v)]).code, 1);
    assert_eq!(run(&["cyclic", "conv", "-p", "3", s(&u), s(&v), "--mode", "smawk"]).code, 1);
    let a = write(&dir, "a.json", r#"{"default": "1", "values": {"3": "0"}}"#);
    let b = write(&dir, "b.json", r#"{"default": "1", "values": {"-1": "0"}}"#);
    let r = run(&["zseq", "conv", s(&a), s(&b)]);
    assert_eq!(r.json["result"], json!({ "default": "1", "values": { "2": "0" } }));
}

#[test]
fn pl_commands() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "f.json", r#"{"breakpoints": [["1", "0"]]}"#);
    let g = write(&dir, "g.json", r#"{"breakpoints": [["-1", "0"]]}"#);
    assert_eq!(run(&["pl", "conv", s(&f), s(&g)]).json, json!({ "breakpoints": [["0", "0"]] }));
    let r = run(&["pl", "scale", "--lambda", "1/2", s(&f)]);
    assert_eq!(r.json, json!({ "breakpoints": [["1/2", "0"]] }));
    let g1 = write(&dir, "g1.json", r#"{"breakpoints": [["0", "1"]]}"#);
    let r = run(&["pl", "fixedpoint", "--lambda", "1/2", "--tol", "1e-9", s(&g1)]);
    assert_eq!(r.code, 0);
    assert_eq!(r.json["iterations"], 32);
    let bad = write(&dir, "bad.json", r#"{"breakpoints": [["0", "-1"]]}"#);
    assert_eq!(run(&["pl", "check", s(&bad)]).code, 1);
    assert_eq!(run(&["pl", "check", s(&g1)]).json["c_plus"], "1");
    assert_eq!(run(&["pl", "scale", "--lambda", "-1", s(&f)]).code, 1);
}

#[test]
fn bench_and_output_flag() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("report.json");
    let r = run(&["bench", "minplus", "--n", "256", "--mode", "smawk", "--seed", "3", "--output", s(&out)]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.is_empty());
    let report: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(report["matches_naive"], true);
    assert_eq!(report["seed"], 3);
    assert_eq!(run(&["bench", "minplus", "--n", "1", "--mode", "naive"]).code, 0);
}

#[test]
fn deterministic_output() {
    let dir = TempDir::new().unwrap();
    let z8 = magma(&dir, "z8.json", &FiniteMetricMagma::cyclic(8));
    let a = run(&["katetov", "check", s(&z8), "--random", "5", "--seed", "42"]);
    let b = run(&["--seed", "42", "katetov", "check", s(&z8), "--random", "5"]);
    assert_eq!(a.stdout, b.stdout);
    let z4 = magma(&dir, "z4.json", &FiniteMetricMagma::dihedral(2));
    assert_eq!(run(&["closure", s(&z4), "--format", "json"]).stdout, run(&["closure", s(&z4)]).stdout);
}
