//! End-to-end runs of the binary against the checked-in fixture files,
//! pinning the exit-code contract and the output round-trips.

use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tightspec"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn tight_lists_fixture_values() {
    let out = run(&["tight", fixture("e1.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "[{a}, {b}]");

    let out = run(&["tight", "--json", fixture("e3.json").to_str().unwrap()]);
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(value["tight"], serde_json::json!([["x", "t"], ["y", "t"]]));
    assert_eq!(value["empty_is_tight"], serde_json::json!(false));
}

#[test]
fn validate_exit_codes() {
    // clean pseudobasis
    let out = run(&["validate", fixture("e1.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));

    // parse error
    let out = run(&["validate", fixture("garbage.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));

    // a relation failing the pseudobasis axioms: validation failure
    let dir = std::env::temp_dir().join("tightspec-cli-tests");
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad-rel.json");
    std::fs::write(&bad, r#"{"elements": ["u","v"], "rel": [["u","v"]]}"#).unwrap();
    let out = run(&["validate", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));

    // unknown label: schema error
    let unknown = dir.join("unknown-label.json");
    std::fs::write(&unknown, r#"{"elements": ["a"], "rel": [["a","z"]]}"#).unwrap();
    let out = run(&["validate", unknown.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));

    // unknown flags are errors
    let out = run(&["validate", "--frobnicate", fixture("e1.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn validate_detects_kinds() {
    for name in ["e5.json", "i2.json", "pair2.json", "sierpinski.json", "b3.json"] {
        let out = run(&["validate", fixture(name).to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0), "{name}: {}", stdout(&out));
    }
    // forcing the wrong kind fails the schema
    let out = run(&["validate", "--kind", "groupoid", fixture("e1.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn spectrum_output_reparses_as_topology() {
    let out = run(&["spectrum", fixture("e3.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    // sanity of the JSON shape
    let value: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(value["points"], serde_json::json!([["x", "t"], ["y", "t"]]));
    assert!(value["O_p"]["t"].as_array().unwrap().len() == 2);

    // the round-trip invariant: spectrum output is a valid topology file
    let dir = std::env::temp_dir().join("tightspec-cli-tests");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("spectrum-as-topology.json");
    std::fs::write(&path, &text).unwrap();
    let out = run(&["validate", "--kind", "topology", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
}

#[test]
fn groupoid_dot_shape() {
    let out = run(&["groupoid", "--dot", fixture("i2.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_eq!(text.matches("shape=box").count(), 2);
    assert_eq!(text.matches(" -> ").count(), 2);
}

#[test]
fn spectrum_dot_shape() {
    let out = run(&["spectrum", "--dot", fixture("e3.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    // two points, one O_p box and one O^p diamond per element
    assert_eq!(text.matches("shape=circle").count(), 2);
    assert_eq!(text.matches("shape=box").count(), 3);
    assert_eq!(text.matches("shape=diamond").count(), 3);
    // O_t contains both points
    assert_eq!(text.matches("-- \"O_t\"").count(), 2);
}

#[test]
fn groupoid_json_is_a_valid_groupoid_file() {
    let out = run(&["groupoid", fixture("e5.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let dir = std::env::temp_dir().join("tightspec-cli-tests");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("e5-groupoid.json");
    std::fs::write(&path, stdout(&out)).unwrap();
    let out = run(&["validate", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn recover_passes_on_pair_groupoid() {
    let out = run(&["recover", fixture("pair2.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));

    // explicit singleton bisections
    let dir = std::env::temp_dir().join("tightspec-cli-tests");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("singleton-bisections.json");
    std::fs::write(&path, r#"[["1:1"],["1:2"],["2:1"],["2:2"]]"#).unwrap();
    let out = run(&[
        "recover",
        fixture("pair2.json").to_str().unwrap(),
        "--bisections",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
}

#[test]
fn battery_runs_clean() {
    let out = run(&["battery", "--seed", "3", "--count", "10", "--max-size", "4"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(stdout(&out).contains("verdict: PASS"));

    let out = run(&["battery", "--seed", "3", "--count", "5", "--json"]);
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(value["checks"].as_array().unwrap().len() > 30);
}

#[test]
fn carrier_cap_env_override() {
    let out = Command::new(env!("CARGO_BIN_EXE_tightspec"))
        .args(["tight", fixture("e3.json").to_str().unwrap()])
        .env("TIGHT_MAX_CARRIER", "2")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}
