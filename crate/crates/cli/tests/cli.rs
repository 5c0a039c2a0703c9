use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::{json, Value};

fn klcells(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_klcells")).args(args).output().expect("binary runs")
}

fn json_data(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let doc: Value = serde_json::from_slice(&out.stdout).expect("json output");
    assert!(doc["header"]["config_hash"].as_str().unwrap().len() == 64);
    doc["data"].clone()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("klcells-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn kl_table_has_the_generator_polynomial() {
    let rows = json_data(&klcells(&["kl", "--radius", "6"]));
    let rows = rows.as_array().unwrap();
    assert!(rows.contains(&json!({"y": "e", "w": "s2", "poly": {"-1": 1}})));
    assert!(rows.contains(&json!({"y": "e", "w": "s1", "poly": {"-5": 1}})));
}

#[test]
fn weights_flag_changes_table_and_header() {
    let out = klcells(&["kl", "--radius", "3", "--weights", "2,1,1"]);
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["header"]["weights"], json!([2, 1, 1]));
    assert!(doc["data"].as_array().unwrap().contains(&json!({"y": "e", "w": "s1", "poly": {"-2": 1}})));
}

#[test]
fn compare_against_own_output_is_clean() {
    let path = scratch("cells.json");
    let out = klcells(&["cells", "--radius", "10", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    let cmp = klcells(&["compare", "--radius", "10", "--against", path.to_str().unwrap()]);
    assert_eq!(cmp.status.code(), Some(0));
    assert_eq!(json_data(&cmp)["diff"], json!([]));

    // Merging two cells must show up as a difference and exit 1.
    let mut doc: Value = serde_json::from_slice(&std::fs::read(&path).unwrap()).unwrap();
    let cells = doc["data"]["cells"].as_array_mut().unwrap();
    let moved = cells.remove(1);
    let first = cells[0]["elements"].as_array_mut().unwrap();
    first.extend(moved["elements"].as_array().unwrap().iter().cloned());
    std::fs::write(&path, doc.to_string()).unwrap();
    let cmp = klcells(&["compare", "--radius", "10", "--against", path.to_str().unwrap()]);
    assert_eq!(cmp.status.code(), Some(1));
}

#[test]
fn compare_with_region_map_is_clean() {
    let out = klcells(&["compare", "--radius", "14"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
}

#[test]
fn errors_are_json_records() {
    let out = klcells(&["ball", "--weights", "1,x,1"]);
    assert_eq!(out.status.code(), Some(2));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"], "Config");

    let out = klcells(&["cbasis", "--radius", "3", "--word", "s1.s4"]);
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"], "UnknownGenerator");

    let out = klcells(&["kl", "--radius", "3", "--format", "svg"]);
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"], "UnsupportedFormat");
}

#[test]
fn config_file_selects_the_group() {
    let path = scratch("b2.toml");
    std::fs::write(&path, "names = [\"a\", \"b\"]\nmatrix = [[1, 4], [4, 1]]\nweights = [2, 1]\n").unwrap();
    let data = json_data(&klcells(&["ball", "--config", path.to_str().unwrap(), "--radius", "6"]));
    assert_eq!(data["size"], json!(8));
    let text = klcells(&["cells", "--config", path.to_str().unwrap(), "--radius", "6", "--format", "text"]);
    let text = String::from_utf8(text.stdout).unwrap();
    assert!(text.starts_with("# command: cells\n"));
    assert!(text.contains("cell 0"));
}

#[test]
fn induct_reports_conditions_and_ideal() {
    let data = json_data(&klcells(&["induct", "--radius", "10", "--preset", "parabolic(s2,s3)"]));
    let conds = data["conditions"]["conditions"].as_array().unwrap();
    assert_eq!(conds.len(), 5);
    assert!(conds.iter().all(|c| c["status"] == "pass"));
    assert_eq!(data["ideal"]["verdict"], "Yes");

    let data = json_data(&klcells(&["induct", "--radius", "12", "--preset", "g2_B3"]));
    assert!(!data["i5_failures"].as_array().unwrap().is_empty());
    assert_eq!(data["i5_failures"][0]["u1"], "s1.s2.s1.s2.s3");
}

#[test]
fn stdout_and_out_file_agree() {
    let path = scratch("hasse.dot");
    let a = klcells(&["hasse", "--radius", "12"]);
    klcells(&["hasse", "--radius", "12", "--out", path.to_str().unwrap()]);
    assert_eq!(a.stdout, std::fs::read(&path).unwrap());
    let text = String::from_utf8(a.stdout).unwrap();
    assert!(text.starts_with("// command: hasse\n"));
    assert!(text.contains("label=\"e\""));
}
