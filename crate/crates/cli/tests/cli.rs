use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn corpus(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gitcone")).args(args).output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn classify_kronecker() {
    let out = run(&["classify", corpus("kronecker.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), r#"{"type":"Euclidean","delta":[1,1]}"#);
}

#[test]
fn equiv_exit_codes() {
    let k = corpus("kronecker.json");
    let k = k.to_str().unwrap();
    assert_eq!(run(&["equiv", k, "--a1", "1,0", "--a2", "3,0"]).status.code(), Some(0));
    let out = run(&["equiv", k, "--a1", "1,0", "--a2", "1,1"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["witness"], "D([2,1])");
    let out = run(&["equiv", k, "--a1", "1/2,1/2", "--a2", "2,2", "--format", "text"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), "equivalent completeness=proven");
}

#[test]
fn selfcheck_reports() {
    let out = run(&["selfcheck", corpus("d4tilde.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["tube_ranks"], serde_json::json!([2, 2, 2]));
    assert_eq!(r["maximal_cones"], 8);
    let out = run(&["selfcheck", corpus("kronecker3.json").to_str().unwrap()]);
    let r = json(&out);
    let skipped: Vec<&str> = r["groups"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|g| g["status"] == "skipped")
        .map(|g| g["note"].as_str().unwrap())
        .collect();
    assert_eq!(skipped.len(), 4);
    assert!(skipped.iter().all(|n| n.starts_with("NotSupported")));
}

#[test]
fn usage_and_data_errors() {
    assert_eq!(run(&[]).status.code(), Some(64));
    assert_eq!(run(&["classify"]).status.code(), Some(64));
    assert_eq!(run(&["equiv", "x.json", "--a1", "1"]).status.code(), Some(64));
    assert_eq!(run(&["classify", "/does/not/exist.json"]).status.code(), Some(65));
    let mut bad = tempfile::NamedTempFile::new().unwrap();
    write!(bad, "{{\"vertices\": [\"1\", \"2\"], \"arrows\": [{{\"from\": \"1\", \"to\": \"3\"}}]}}").unwrap();
    assert_eq!(run(&["classify", bad.path().to_str().unwrap()]).status.code(), Some(65));
    let mut cyclic = tempfile::NamedTempFile::new().unwrap();
    write!(cyclic, "{{\"vertices\": [\"1\", \"2\"], \"arrows\": [{{\"from\": \"1\", \"to\": \"2\"}}, {{\"from\": \"2\", \"to\": \"1\"}}]}}").unwrap();
    assert_eq!(run(&["classify", cyclic.path().to_str().unwrap()]).status.code(), Some(65));
    let k = corpus("kronecker.json");
    assert_eq!(run(&["wt", k.to_str().unwrap(), "1,x"]).status.code(), Some(65));
    assert_eq!(run(&["subdims", k.to_str().unwrap(), "1,-1"]).status.code(), Some(65));
}

#[test]
fn not_supported_is_indeterminate() {
    let k3 = corpus("kronecker3.json");
    assert_eq!(run(&["tubes", k3.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(run(&["equiv", k3.to_str().unwrap(), "--a1", "1,0", "--a2", "1,1"]).status.code(), Some(2));
}

#[test]
fn cone_json_round_trips() {
    let out = run(&["dcone", corpus("d4tilde.json").to_str().unwrap(), "2,1,1,1,1"]);
    let v = json(&out);
    let c = gitcone::Cone::from_json(&v).unwrap();
    assert_eq!(c.to_json(), v);
}
