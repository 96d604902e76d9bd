use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn scarflab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_scarflab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn schema() -> jsonschema::JSONSchema {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../schemas/result.v1.json");
    let text = std::fs::read_to_string(path).expect("schema file");
    let value: Value = serde_json::from_str(&text).expect("schema parses");
    jsonschema::JSONSchema::compile(&value).expect("schema compiles")
}

/// Runs a JSON command, checks its exit code and validates the payload.
fn json(args: &[&str], code: i32) -> Value {
    let out = scarflab(args);
    assert_eq!(out.status.code(), Some(code), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    let value: Value = serde_json::from_slice(&out.stdout).expect("stdout is JSON");
    let compiled = schema();
    if let Err(errors) = compiled.validate(&value) {
        let msgs: Vec<String> = errors.map(|e| e.to_string()).collect();
        panic!("{args:?} violates the schema: {msgs:?}");
    }
    value
}

fn exit_code(args: &[&str]) -> Option<i32> {
    scarflab(args).status.code()
}

fn csv_lines(args: &[&str]) -> Vec<String> {
    let out = scarflab(args);
    assert!(out.status.success(), "{args:?}");
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(!text.contains('\r'), "LF line endings");
    text.lines().map(str::to_owned).collect()
}

#[test]
fn points_counts() {
    let v = json(&["points", "--q", "3", "--r", "2"], 0);
    assert_eq!(v["data"]["count"], 6);
    assert_eq!(v["data"]["points"][0], serde_json::json!([2, 0, 0]));
    let lines = csv_lines(&["points", "--q", "6", "--r", "3", "--format", "csv"]);
    assert_eq!(lines[0], "x1,x2,x3,x4,x5,x6");
    assert_eq!(lines.len(), 1 + 56);
    assert_eq!(exit_code(&["points", "--q", "0", "--r", "1"]), Some(2));
}

#[test]
fn check_face_negative_with_witness() {
    let v = json(&["check-face", "--q", "3", "--r", "2", "0,0,2", "1,1,0"], 0);
    let d = &v["data"];
    assert_eq!(d["geometric"], false);
    assert_eq!(d["labels"], false);
    assert_eq!(d["agree"], true);
    assert_eq!(d["witness"]["point"], serde_json::json!([1, 0, 1]));
}

#[test]
fn check_face_positive() {
    let v = json(&["check-face", "--q", "4", "--r", "4", "2,1,1,0", "2,0,1,1", "1,1,1,1"], 0);
    assert_eq!(v["data"]["geometric"], true);
    assert_eq!(v["data"]["labels"], true);
    assert_eq!(v["data"]["catalog"], Value::Null);
    assert_eq!(v["data"]["witness"], Value::Null);
}

#[test]
fn check_face_all_methods_at_r3() {
    let v = json(
        &["check-face", "--q", "5", "--r", "3", "2,1,0,0,0", "1,2,0,0,0", "0,0,1,1,1", "--method", "all"],
        0,
    );
    for m in ["geometric", "labels", "catalog"] {
        assert_eq!(v["data"][m], false, "{m}");
    }
    let v = json(&["check-face", "--q", "4", "--r", "3", "1,1,1,0", "1,1,0,1", "--method", "catalog"], 0);
    assert_eq!(v["data"]["catalog"], true);
    assert_eq!(v["data"]["geometric"], Value::Null);
}

#[test]
fn check_face_usage_errors() {
    assert_eq!(exit_code(&["check-face", "--q", "3", "--r", "2", "--method", "catalog", "0,0,2"]), Some(2));
    assert_eq!(exit_code(&["check-face", "--q", "3", "--r", "2", "0,0,3"]), Some(2));
    assert_eq!(exit_code(&["check-face", "--q", "3", "--r", "2", "0,2"]), Some(2));
    assert_eq!(exit_code(&["check-face", "--q", "3", "--r", "2", "x,0,2"]), Some(2));
    assert_eq!(exit_code(&["check-face", "--q", "3", "--r", "2"]), Some(2));
}

#[test]
fn facet_counts() {
    assert_eq!(json(&["facets", "--q", "5"], 0)["data"]["count"], 41);
    assert_eq!(json(&["facets", "--q", "5", "--family", "W"], 0)["data"]["count"], 20);
    assert_eq!(json(&["facets", "--q", "4"], 0)["data"]["count"], 15);
    let u = json(&["facets", "--q", "5", "--family", "U"], 0);
    assert_eq!(u["data"]["count"], 21);
    let lines = csv_lines(&["facets", "--q", "4", "--format", "csv"]);
    assert_eq!(lines[0], "descriptor,family,size,vertices");
    assert_eq!(lines.len(), 16);
    assert_eq!(exit_code(&["facets", "--q", "4", "--r", "2"]), Some(2));
}

#[test]
fn bounds_table_block() {
    let v = json(&["bounds", "--q", "6", "--r", "3", "--i", "2..4", "--compare"], 0);
    let rows = v["data"]["rows"].as_array().unwrap();
    let expect = [
        ("4710", "19660", "27720"),
        ("19845", "230360", "367290"),
        ("58530", "2118790", "3819816"),
    ];
    assert_eq!(rows.len(), 3);
    for (row, (s, l, t)) in rows.iter().zip(expect) {
        assert_eq!(row["scarf"], s);
        assert_eq!(row["l"], l);
        assert_eq!(row["taylor"], t);
    }
    assert_eq!(rows[0]["taylor_over_scarf"], "924/157");
}

#[test]
fn bounds_single_degrees() {
    let v = json(&["bounds", "--q", "6", "--r", "3", "--i", "20", "--compare"], 0);
    let row = &v["data"]["rows"][0];
    assert_eq!(row["scarf"], "0");
    assert_eq!(row["taylor"], "1346766106565880");
    assert_eq!(row["taylor_over_scarf"], Value::Null);
    let v = json(&["bounds", "--q", "1", "--r", "1", "--i", "0"], 0);
    assert_eq!(v["data"]["rows"][0]["scarf"], "1");
    assert!(v["data"]["rows"][0].get("taylor").is_none());
    let v = json(&["bounds", "--q", "6", "--r", "3"], 0);
    assert_eq!(v["data"]["rows"].as_array().unwrap().len(), 20);
    assert_eq!(exit_code(&["bounds", "--q", "3", "--r", "4"]), Some(2));
    assert_eq!(exit_code(&["bounds", "--q", "3", "--r", "3", "--i", "4..2"]), Some(2));
}

#[test]
fn fvector_methods() {
    let v = json(&["fvector", "--q", "5", "--method", "both"], 0);
    assert_eq!(v["data"]["match"], true);
    assert_eq!(v["data"]["formula"], v["data"]["enumerated"]);
    let v = json(&["fvector", "--q", "8"], 0);
    assert_eq!(v["data"]["log_concave"], true);
    assert_eq!(v["data"]["unimodal"], true);
    assert_eq!(v["data"]["enumerated"], Value::Null);
    let v = json(&["fvector", "--q", "4", "--method", "both"], 0);
    assert_eq!(v["data"]["match"], true);
    assert_eq!(v["data"]["u_complex_match"], true);
    assert_eq!(exit_code(&["fvector", "--q", "7", "--method", "enumerate"]), Some(3));
}

#[test]
fn morse_full_is_deterministic() {
    let a = scarflab(&["morse-verify", "--q", "4", "--scale", "full"]);
    let b = scarflab(&["morse-verify", "--q", "4", "--scale", "full"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v = json(&["morse-verify", "--q", "3", "--scale", "full"], 0);
    let full = &v["data"]["full"];
    for flag in ["homogeneous", "acyclic", "critical_equals_scarf"] {
        assert_eq!(full[flag], true, "{flag}");
    }
    assert_eq!(full["cells"], 1024);
}

#[test]
fn morse_sampled_and_caps() {
    let v = json(&["morse-verify", "--q", "5", "--scale", "sampled", "--samples", "10000", "--seed", "7"], 0);
    assert_eq!(v["data"]["sampled"]["stable"], 10000);
    assert_eq!(v["data"]["pass"], true);
    assert_eq!(exit_code(&["morse-verify", "--q", "5", "--scale", "full"]), Some(3));
    assert_eq!(exit_code(&["morse-verify", "--q", "7", "--scale", "sampled"]), Some(3));
}

#[test]
fn plot_data_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("plot.csv");
    let out = scarflab(&["plot-data", "--q", "5", "6", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    let mut rdr = csv::ReaderBuilder::new().from_reader(text.as_bytes());
    let header: Vec<String> = rdr.headers().unwrap().iter().map(str::to_owned).collect();
    assert_eq!(header, ["q", "i", "scarf", "l", "taylor", "log10_scarf", "log10_l", "log10_taylor"]);
    let rows: Vec<csv::StringRecord> = rdr.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 35 + 56);
    let big = |s: &str| s.parse::<u128>().unwrap();
    for r in &rows {
        assert!(big(&r[2]) <= big(&r[3]) && big(&r[3]) <= big(&r[4]), "{r:?}");
        if r[0] == *"6" && big(&r[1]) > 19 {
            assert_eq!(&r[2], "0");
            assert_eq!(&r[5], "");
        }
    }
    let at = |i: &str| rows.iter().find(|r| &r[0] == "6" && &r[1] == i).unwrap();
    assert_eq!((&at("3")[2], &at("3")[3], &at("3")[4]), ("19845", "230360", "367290"));
    assert_eq!(&at("2")[5], "3.673021");
}

#[test]
fn thread_variable_is_validated() {
    let out = Command::new(env!("CARGO_BIN_EXE_scarflab"))
        .args(["points", "--q", "2", "--r", "1"])
        .env("SCARFLAB_THREADS", "1")
        .output()
        .unwrap();
    assert!(out.status.success());
    let out = Command::new(env!("CARGO_BIN_EXE_scarflab"))
        .args(["points", "--q", "2", "--r", "1"])
        .env("SCARFLAB_THREADS", "none")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn json_without_table_rejects_csv() {
    assert_eq!(exit_code(&["morse-verify", "--q", "3", "--format", "csv"]), Some(2));
}

#[test]
fn schema_rejects_malformed_payloads() {
    let compiled = schema();
    let mut v = json(&["bounds", "--q", "6", "--r", "3", "--i", "2"], 0);
    assert!(compiled.is_valid(&v));
    v["data"]["rows"][0]["scarf"] = serde_json::json!(4710);
    assert!(!compiled.is_valid(&v));
    let mut v = json(&["points", "--q", "2", "--r", "1"], 0);
    v["data"]["extra"] = Value::Bool(true);
    assert!(!compiled.is_valid(&v));
}
