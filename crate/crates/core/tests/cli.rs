use std::path::Path;
use std::process::{Command, Output};

use serde_json::{json, Value};

fn facto(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_facto")).args(args).output().expect("binary runs")
}

/// The rank-one factorization (x, x) of x^2.
fn x_x() -> Value {
    json!({
        "d": 2, "l": 1, "m": 1,
        "degs": [[0], [1]],
        "maps": [{"rows": 1, "cols": 1, "entries": [[["0", "1"]]], "src_degs": [0], "tgt_degs": [1]}]
    })
}

fn write(dir: &Path, name: &str, v: &Value) -> String {
    let path = dir.join(name);
    std::fs::write(&path, v.to_string()).unwrap();
    path.to_str().unwrap().to_owned()
}

fn stdout_json(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

#[test]
fn validate_prints_closing_map() {
    let dir = tempfile::tempdir().unwrap();
    let mf = write(dir.path(), "mf.json", &x_x());
    let v = stdout_json(&facto(&["validate", "--field", "fp:5", "--in", &mf]));
    assert_eq!(v["valid"], true);
    // F_p coefficients serialize as integers.
    assert_eq!(v["closing"]["entries"], json!([[[0, 1]]]));
    assert_eq!(v["closing"]["src_degs"], json!([1]));
    assert_eq!(v["closing"]["tgt_degs"], json!([2]));
}

#[test]
fn cok_of_x_x_is_the_residue_field() {
    let dir = tempfile::tempdir().unwrap();
    let mf = write(dir.path(), "mf.json", &x_x());
    let v = stdout_json(&facto(&["cok", "--in", &mf]));
    let objects = v["objects"].as_array().unwrap();
    assert_eq!(objects.len(), 1);
    // One summand R/(x) generated in degree -1.
    assert_eq!(objects[0]["summands"], json!([[1, -1]]));
}

#[test]
fn cok_then_reconstruct_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let mf = write(dir.path(), "mf.json", &x_x());
    let chain = stdout_json(&facto(&["cok", "--in", &mf]));
    let chain_file = write(dir.path(), "chain.json", &chain);
    let rebuilt = stdout_json(&facto(&["reconstruct", "--in", &chain_file]));
    let rebuilt_file = write(dir.path(), "rebuilt.json", &rebuilt);
    assert_eq!(stdout_json(&facto(&["cok", "--in", &rebuilt_file])), chain);
}

#[test]
fn census_reports_two_matched_classes() {
    let out = facto(&["census", "--field", "fp:5", "--d", "3", "--l", "1", "--bounds", "m=1,dim=3,window=3", "--format", "json"]);
    let v = stdout_json(&out);
    assert_eq!(v["fac_classes"].as_array().unwrap().len(), 2);
    let matching = v["matching"].as_array().unwrap();
    assert_eq!(matching.len(), 2);
    assert!(matching.iter().all(|m| !m["chain"].is_null()));
    assert_eq!(v["bijective"], true);
}

#[test]
fn same_seed_same_bytes() {
    let args = ["selftest", "--field", "fp:3", "--d", "2", "--l", "1", "--trials", "4", "--seed", "11"];
    let first = facto(&args);
    assert!(first.status.success());
    assert_eq!(first.stdout, facto(&args).stdout);

    let census = ["census", "--field", "fp:5", "--d", "2", "--l", "2", "--bounds", "m=2,dim=3,window=2", "--format", "json"];
    assert_eq!(facto(&census).stdout, facto(&census).stdout);
}

#[test]
fn out_file_written_only_on_success() {
    let dir = tempfile::tempdir().unwrap();
    let mf = write(dir.path(), "mf.json", &x_x());
    let target = dir.path().join("chain.json");
    let target_str = target.to_str().unwrap();

    let ok = facto(&["cok", "--in", &mf, "--out", target_str]);
    assert!(ok.status.success());
    assert!(ok.stdout.is_empty());
    serde_json::from_str::<Value>(&std::fs::read_to_string(&target).unwrap()).unwrap();
    std::fs::remove_file(&target).unwrap();

    let mut broken = x_x();
    broken["maps"][0]["entries"] = json!([[["1"]]]);
    let bad = write(dir.path(), "bad.json", &broken);
    let failed = facto(&["validate", "--in", &bad, "--out", target_str]);
    assert!(!failed.status.success());
    assert!(!target.exists());
    let leftovers: Vec<_> = std::fs::read_dir(dir.path()).unwrap().map(|e| e.unwrap().file_name()).collect();
    assert_eq!(leftovers.len(), 2, "{leftovers:?}");
}

#[test]
fn malformed_input_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("garbage.json");
    std::fs::write(&path, "{\"d\": 2, \"l\":").unwrap();
    let out = facto(&["validate", "--in", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(!out.stderr.is_empty());

    let missing = facto(&["cok", "--in", dir.path().join("absent.json").to_str().unwrap()]);
    assert_eq!(missing.status.code(), Some(1));

    assert_eq!(facto(&["census", "--d", "2", "--l", "1", "--bounds", "m=1"]).status.code(), Some(1));
    assert_ne!(facto(&["frobnicate"]).status.code(), Some(0));
}
