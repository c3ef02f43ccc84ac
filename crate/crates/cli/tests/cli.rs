use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

use qtoda::cartan_root::{build_cartan, Series};
use qtoda::coxeter_hopf::{Character, CoxeterSetup, Direction};
use qtoda::representations::builtin_rep;
use qtoda::toda_ops::{toda_hamiltonian, DifferenceOperator};

fn qtoda(cache: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qtoda"))
        .args(args)
        .env("QTODA_CACHE_DIR", cache)
        .output()
        .expect("binary runs")
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn report(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("JSON report on stdout")
}

#[test]
fn toda_sl2_matches_library() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("sl2.json");
    let o = qtoda(dir.path(), &["toda", "--type", "A", "--rank", "1", "--rep", "fundamental:1", "--out", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stderr(&o).contains("3 terms"));
    let doc: Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(doc["settings"]["pi"], serde_json::json!([1]));
    assert_eq!(doc["settings"]["chi"], serde_json::json!(["1"]));
    let c = build_cartan(Series::A, 1).unwrap();
    let op = DifferenceOperator::from_json(&c.d, &doc["terms"]).unwrap();
    let s = CoxeterSetup::new(&c, &[0], None).unwrap();
    let expect = toda_hamiltonian(
        &s,
        &builtin_rep(Series::A, 1, "vector").unwrap(),
        &Character::trivial(Direction::Positive, 1),
        &Character::trivial(Direction::Negative, 1),
    )
    .unwrap();
    assert_eq!(op, expect);
}

#[test]
fn latex_output_for_sl3() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("sl3.tex");
    let o = qtoda(dir.path(), &["toda", "--type", "A", "--rank", "2", "--rep", "fundamental:1", "--format", "latex", "--out", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    let tex = fs::read_to_string(&out).unwrap();
    assert!(tex.contains("T_{"));
    assert!(stderr(&o).contains("5 terms"));
}

#[test]
fn invalid_permutation_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let o = qtoda(dir.path(), &["toda", "--rank", "2", "--pi", "1,1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("not a permutation"));
    let o = qtoda(dir.path(), &["toda", "--rank", "1", "--chi", "q - 1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn check_suites_pass_on_sl3() {
    let dir = tempfile::tempdir().unwrap();
    for suite in ["cayley", "commutativity"] {
        let o = qtoda(dir.path(), &["check", "--suite", suite, "--type", "A", "--rank", "2"]);
        assert!(o.status.success(), "{}", stderr(&o));
        let r = report(&o);
        assert_eq!(r["passed"], Value::Bool(true));
        assert_eq!(r["suites"][0]["suite"], suite);
        assert_eq!(r["suites"][0]["status"], "pass");
    }
    let o = qtoda(dir.path(), &["check", "--type", "A", "--rank", "2", "--pi", "2,1", "--no-cache"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(report(&o)["suites"].as_array().unwrap().len(), 9);
}

#[test]
fn serre_g2_passes_or_reports_budget() {
    let dir = tempfile::tempdir().unwrap();
    let o = qtoda(dir.path(), &["check", "--suite", "serre", "--type", "G", "--rank", "2"]);
    let r = report(&o);
    let status = r["suites"][0]["status"].as_str().unwrap().to_string();
    assert!(status == "pass" || status == "budget-exceeded", "{status}");
    assert_eq!(o.status.success(), status == "pass");
}

#[test]
fn tiny_budget_is_reported() {
    let dir = tempfile::tempdir().unwrap();
    let o = qtoda(dir.path(), &["check", "--suite", "serre", "--type", "B", "--rank", "2", "--budget-steps", "1"]);
    assert!(!o.status.success());
    assert_eq!(report(&o)["suites"][0]["status"], "budget-exceeded");
}

#[test]
fn failing_suite_exits_nonzero() {
    let dir = tempfile::tempdir().unwrap();
    let o = qtoda(dir.path(), &["check", "--suite", "commutativity", "--type", "B", "--rank", "2"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(report(&o)["passed"], Value::Bool(false));
}

#[test]
fn cache_hits_misses_and_eviction() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache");
    let args = ["toda", "--rank", "2", "--format", "text"];
    let first = qtoda(&cache, &args);
    assert!(first.status.success());
    assert!(!stderr(&first).contains("cache hit"));
    let second = qtoda(&cache, &args);
    assert!(stderr(&second).contains("cache hit"));
    assert_eq!(first.stdout, second.stdout);

    let changed = qtoda(&cache, &["toda", "--rank", "2", "--format", "text", "--chi", "2,1"]);
    assert!(!stderr(&changed).contains("cache hit"));

    let bypass = qtoda(&cache, &["toda", "--rank", "2", "--format", "text", "--no-cache"]);
    assert!(!stderr(&bypass).contains("cache hit"));

    for e in fs::read_dir(&cache).unwrap() {
        fs::write(e.unwrap().path(), "{not json").unwrap();
    }
    let recovered = qtoda(&cache, &args);
    assert!(recovered.status.success());
    assert!(stderr(&recovered).contains("evicting corrupt cache entry"));
    assert_eq!(recovered.stdout, first.stdout);
    assert!(stderr(&qtoda(&cache, &args)).contains("cache hit"));
}

#[test]
fn identical_configs_give_identical_files() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for p in [&a, &b] {
        let o = qtoda(dir.path(), &["toda", "--rank", "2", "--rep", "dual", "--no-cache", "--out", p.to_str().unwrap()]);
        assert!(o.status.success());
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
}

#[test]
fn representation_files() {
    let dir = tempfile::tempdir().unwrap();
    let rep = dir.path().join("v.json");
    fs::write(&rep, builtin_rep(Series::A, 1, "vector").unwrap().to_json().to_string()).unwrap();
    let from_file = qtoda(dir.path(), &["toda", "--rank", "1", "--rep-file", rep.to_str().unwrap(), "--format", "text", "--no-cache"]);
    let builtin = qtoda(dir.path(), &["toda", "--rank", "1", "--format", "text", "--no-cache"]);
    assert!(from_file.status.success(), "{}", stderr(&from_file));
    assert_eq!(from_file.stdout, builtin.stdout);

    let bad = dir.path().join("bad.json");
    fs::write(&bad, r#"{"dim": 2, "weights": [[1], [-1]], "E": [["0", "2"], ["0", "0"]], "F": [["0", "0"], ["1", "0"]]}"#).unwrap();
    let o = qtoda(dir.path(), &["toda", "--rank", "1", "--rep-file", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("representations"));

    let missing = qtoda(dir.path(), &["toda", "--rank", "1", "--rep-file", "/nonexistent/rep.json"]);
    assert_eq!(missing.status.code(), Some(2));
}
