use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use trifocal::io::tensor_from_json;
use trifocal::linalg::{Field, Scalar};

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_trifocal")).args(args).output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn scratch(name: &str, contents: &str) -> String {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("cli");
    fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    fs::write(&p, contents).unwrap();
    p.to_string_lossy().into_owned()
}

fn catalog_file(name: &str, file: &str) -> String {
    let o = bin(&["catalog", name]);
    assert_eq!(code(&o), 0);
    scratch(file, &stdout(&o))
}

const CAMERAS: &str = r#"{"A1": [[1,0,0,0],[0,1,0,0],[0,0,1,0]], "A2": [[1,2,3,1],[0,1,"1/2",2],[3,0,1,-1]], "A3": [[2,1,0,1],[1,-1,4,0],[0,3,1,2]]}"#;
const CAMERAS_SCALED: &str = r#"{"A1": [[3,0,0,0],[0,3,0,0],[0,0,3,0]], "A2": [[1,2,3,1],[0,1,"1/2",2],[3,0,1,-1]], "A3": [[2,1,0,1],[1,-1,4,0],[0,3,1,2]]}"#;
const SHARED_FOCUS: &str = r#"{"A1": [[1,0,0,0],[0,1,0,0],[0,0,1,0]], "A2": [[2,0,0,0],[0,1,0,0],[0,0,1,0]], "A3": [[2,1,0,1],[1,-1,4,0],[0,3,1,2]]}"#;

#[test]
fn check_exit_codes() {
    let nf = catalog_file("trifocal-11''", "nf.json");
    assert_eq!(code(&bin(&["check", &nf])), 0);
    let f = catalog_file("F", "f.json");
    let o = bin(&["check", &f]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("P-Rank (2,2,2), too low"));
    let bad = scratch("bad.json", "[[[1,2,3]]");
    let o = bin(&["check", &bad]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("error"));
    assert_eq!(code(&bin(&["check", "/nonexistent/tensor.json"])), 2);
    assert_eq!(code(&bin(&["check", &nf, "--randomize", "--seed", "9"])), 0);
}

#[test]
fn permutation_tolerance_flag() {
    let o11 = catalog_file("11", "o11.json");
    assert_eq!(code(&bin(&["check", &o11])), 1);
    assert_eq!(code(&bin(&["check", &o11, "--permutation-tolerant"])), 0);
}

#[test]
fn json_reports_are_versioned() {
    let f = catalog_file("F", "f2.json");
    let o = bin(&["--json", "--seed", "7", "check", &f]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["command"], "check");
    assert_eq!(v["config"]["seed"], 7);
    assert_eq!(v["result"]["is_trifocal"], false);
    assert_eq!(v["result"]["component"], "PRank222");
    assert_eq!(v["result"]["signature"]["prank"]["a"], 2);
}

#[test]
fn cameras_pipeline() {
    let o = bin(&["from-cameras", &scratch("cams.json", CAMERAS)]);
    assert_eq!(code(&o), 0);
    let t = tensor_from_json(&stdout(&o)).unwrap();
    let tf = scratch("from_cams.json", &stdout(&o));
    assert_eq!(code(&bin(&["check", &tf])), 0);

    let o = bin(&["from-cameras", &scratch("cams3.json", CAMERAS_SCALED)]);
    let scaled = tensor_from_json(&stdout(&o)).unwrap();
    assert_eq!(scaled, t.scale(&Scalar::from_i64(3, Field::Rational)));

    let o = bin(&["from-cameras", &scratch("shared.json", SHARED_FOCUS)]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("focal point"));
}

#[test]
fn discover_through_degree_five() {
    let o = bin(&["--json", "discover", "--degree", "5"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let counts = &v["result"]["counts"];
    assert_eq!(counts["3"], 10);
    assert_eq!(counts["4"], 0);
    assert_eq!(counts["5"], 81);
    let text = stdout(&bin(&["discover", "--degree", "3"]));
    assert!(text.contains("(111,111,3)"));
    assert!(text.contains("degree 3: 10 new minimal generators"));
}

#[test]
fn caps_are_enforced() {
    assert_eq!(code(&bin(&["discover", "--degree", "7"])), 2);
    assert_eq!(code(&bin(&["--degree-cap", "8", "hilbert", "--degree", "3"])), 2);
    assert_eq!(code(&bin(&["--prime", "91", "hilbert", "--degree", "3"])), 2);
    assert_eq!(code(&bin(&["nzd", "--degree", "9"])), 2);
}

#[test]
fn hilbert_table() {
    let o = bin(&["--json", "hilbert", "--degree", "5"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let q: Vec<u64> = v["result"].as_array().unwrap().iter().map(|r| r["quotient"].as_u64().unwrap()).collect();
    assert_eq!(q, [27, 378, 3644, 27135, 166050]);
}

#[test]
fn nzd_verdicts() {
    let o = bin(&["nzd", "--witness", "f", "--degree", "5"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("non-zero-divisor through the cap"));
    let ideal = scratch("toy_ideal.txt", "# a zero divisor for T_1_1_1\nT_1_1_1*T_1_1_2\n");
    let w = scratch("toy_witness.txt", "T_1_1_1\n");
    let o = bin(&["--json", "nzd", "--ideal", &ideal, "--witness-file", &w, "--degree", "3"]);
    assert_eq!(code(&o), 1);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["result"]["first_failure"], 2);
    assert_eq!(v["result"]["rows"][1]["with_f"], 351);
    assert_eq!(
        v["result"]["rows"][1]["quotient"].as_u64().unwrap() - v["result"]["rows"][1]["shifted"].as_u64().unwrap(),
        350
    );
}

#[test]
fn classify_from_catalog() {
    let o = bin(&["--json", "classify", "--name", "18"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["result"]["component"], "Sub233");
    assert_eq!(code(&bin(&["classify", "--name", "nope"])), 2);
    assert_eq!(code(&bin(&["classify"])), 2);
}
