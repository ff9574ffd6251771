use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

fn semihull(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_semihull")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn classify_reports_flags() {
    let out = semihull(&["classify", path(&data("prime_idempotent.json"))]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(doc["tool"], "semihull");
    assert_eq!(doc["command"], "classify");
    assert_eq!(doc["input_digest"].as_str().unwrap().len(), 64);
    let r = &doc["results"];
    for flag in ["zero_left_cancellative", "zero_right_cancellative", "categorical_at_zero", "right_reductive"] {
        assert_eq!(r[flag]["holds"], true, "{flag}");
    }
}

#[test]
fn output_is_deterministic() {
    for args in [
        vec!["spectrum", "unital_chain.json"],
        vec!["hull", "prime_idempotent.json"],
        vec!["subshift", "golden_mean.json"],
        vec!["germs", "unital_chain.json"],
    ] {
        let file = data(args[1]);
        let a = semihull(&[args[0], path(&file)]);
        let b = semihull(&[args[0], path(&file)]);
        assert_eq!(a.status.code(), Some(0), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn unital_chain_spectrum() {
    let doc = json(&semihull(&["spectrum", path(&data("unital_chain.json"))]));
    let r = &doc["results"];
    assert_eq!(r["count"], 6);
    assert_eq!(r["ultra"], serde_json::json!(["{1}", "{a}", "{aa}"]));
    assert_eq!(doc["violations"], serde_json::json!([]));
}

#[test]
fn hull_dot_is_a_graph() {
    let out = semihull(&["hull", "--emit", "dot", path(&data("unital_chain.json"))]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("digraph"));
    assert!(text.trim_end().ends_with('}'));
    assert!(text.contains("->"));
}

#[test]
fn germ_groupoid_dot() {
    let out = semihull(&["germs", "--space", "ultra", "--emit", "dot", path(&data("unital_chain.json"))]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stdout).unwrap().starts_with("digraph germs {"));
}

#[test]
fn no_repetition_subshift() {
    let out = semihull(&["subshift", path(&data("no_repetition.json"))]);
    assert_eq!(out.status.code(), Some(0));
    let r = &json(&out)["results"];
    assert_eq!(r["words"].as_array().unwrap().len(), 15);
    assert_eq!(r["semigroup_size"], 16);
    assert_eq!(r["classify"]["categorical_at_zero"]["witness"], serde_json::json!(["a", "b", "ac"]));
    let witness = &r["ground_ultra"]["empty_or_infinite"]["witness"];
    assert_eq!(witness["lambda"], serde_json::json!(["a", "b"]));
    assert_eq!(witness["members"], serde_json::json!(["c"]));
}

#[test]
fn emitted_semigroup_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let out_file = dir.path().join("full.json");
    let out = semihull(&[
        "subshift",
        "--depth",
        "2",
        "--emit-semigroup",
        path(&out_file),
        path(&data("full_shift.json")),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let again = semihull(&["classify", path(&out_file)]);
    assert_eq!(again.status.code(), Some(0));
    let r = &json(&again)["results"];
    assert_eq!(r["elements"].as_object().unwrap().len(), 6);
    assert_eq!(r["zero_left_cancellative"]["holds"], true);
}

#[test]
fn verify_is_clean_on_the_corpus() {
    for file in ["unital_chain.json", "prime_idempotent.json", "no_repetition.json", "golden_mean.json"] {
        let out = semihull(&["verify", path(&data(file))]);
        assert_eq!(out.status.code(), Some(0), "{file}: {}", String::from_utf8_lossy(&out.stdout));
    }
    let out = semihull(&["verify", "--seed", "7", "--random", "20", path(&data("unital_chain.json"))]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["results"]["findings"]["random tables"]["dirty"], 0);
}

#[test]
fn violations_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("band.json");
    std::fs::write(
        &file,
        r#"{"elements":["0","e","f"],"zero":"0","table":[["0","0","0"],["0","e","e"],["0","f","f"]]}"#,
    )
    .unwrap();
    let out = semihull(&["verify", path(&file)]);
    assert_eq!(out.status.code(), Some(1));
    let v = &json(&out)["violations"][0];
    assert_eq!(v["anchor"], "zero-left-cancellative");
    assert_eq!(v["witness"], r#"["e", "e", "f"]"#);
}

#[test]
fn bad_input_exits_two() {
    let out = semihull(&["subshift", path(&data("not_factor_closed.json"))]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8(out.stderr).unwrap().contains("not factor closed"));

    let out = semihull(&["spectrum", "/nonexistent/table.json"]);
    assert_eq!(out.status.code(), Some(2));

    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("bad.json");
    std::fs::write(&file, r#"{"elements":["0","a"],"zero":"0","table":[["0","0"],["0","b"]]}"#).unwrap();
    assert_eq!(semihull(&["classify", path(&file)]).status.code(), Some(2));
}
