use std::path::PathBuf;
use std::process::{Command, Output};

const IDENTITY: &str = r#"{
  "source": {"n": 1, "d": 1, "L": 1, "mode": "transcendental", "c": [1]},
  "target": {"n": 1, "d": 1, "L": 1, "mode": "transcendental", "c": [1]},
  "w": [1], "tau": [0], "m": [1], "gamma": ["1"], "b": ["1"],
  "t": [[0]], "p": ["1"], "pprime": ["1"]
}"#;

fn flip(gamma: &str) -> String {
    IDENTITY
        .replace(r#""tau": [0]"#, r#""tau": [1]"#)
        .replace(r#""m": [1]"#, r#""m": [-1]"#)
        .replace(r#""gamma": ["1"]"#, &format!(r#""gamma": ["{gamma}"]"#))
        .replace(r#""p": ["1"]"#, r#""p": ["-h^-1"]"#)
}

fn file(name: &str, text: &str) -> String {
    let dir: PathBuf = std::env::temp_dir().join(format!("qwa-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

fn qwa(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qwa")).args(args).output().unwrap()
}

#[test]
fn identity_validates() {
    let out = qwa(&["validate", &file("id.json", IDENTITY)]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "valid");
}

#[test]
fn flip_validates_with_correct_gamma() {
    let out = qwa(&["validate", &file("flip.json", &flip("q^-1"))]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn wrong_gamma_is_a_semantic_failure() {
    let path = file("bad_flip.json", &flip("1"));
    let out = qwa(&["validate", &path]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("E4 failed at i=1"));

    let out = qwa(&["--output", "structured", "validate", &path]);
    assert_eq!(out.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["valid"], false);
}

#[test]
fn malformed_literal_is_an_input_error() {
    let out = qwa(&["validate", &file("bad_literal.json", &IDENTITY.replace(r#""gamma": ["1"]"#, r#""gamma": ["q^"]"#))]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("gamma"));
}

#[test]
fn malformed_json_is_an_input_error() {
    let out = qwa(&["validate", &file("broken.json", "{ \"source\": ")]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn counterexample_for_cube_root() {
    let cfg = file("cube.json", r#"{"n": 1, "d": 1, "L": 3, "mode": "root_of_unity", "e": 1, "c": [1]}"#);
    let out = qwa(&["counterexample", &cfg]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["m"], serde_json::json!([4]));

    let hom = file("cube_hom.json", &String::from_utf8(out.stdout).unwrap());
    assert_eq!(qwa(&["invert", &hom]).status.code(), Some(1));
    assert_eq!(qwa(&["check-relations", &hom]).status.code(), Some(0));
}

#[test]
fn counterexample_needs_a_root_of_unity() {
    let cfg = file("generic.json", r#"{"n": 1, "d": 1, "L": 1, "mode": "transcendental", "c": [1]}"#);
    assert_ne!(qwa(&["counterexample", &cfg]).status.code(), Some(0));
}

#[test]
fn invert_is_deterministic() {
    let path = file("flip_inv.json", &flip("q^-1"));
    let first = qwa(&["invert", &path]);
    let second = qwa(&["invert", &path]);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);
    let inv = file("flip_inv_out.json", &String::from_utf8(first.stdout).unwrap());
    let id = qwa(&["compose", &path, &inv]);
    let id_canonical = qwa(&["invert", &file("id2.json", IDENTITY)]);
    assert_eq!(id.stdout, id_canonical.stdout);
}

#[test]
fn apply_flip_to_x() {
    let hom = file("flip_apply.json", &flip("q^-1"));
    let x = file("x.json", r#"[{"grade": [1], "coeff": [{"exp": [0], "scalar": "1"}]}]"#);
    let out = qwa(&["apply", &hom, &x]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v[0]["grade"], serde_json::json!([-1]));
}

#[test]
fn selftest_passes() {
    let out = qwa(&["selftest", "--count", "3"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
}
