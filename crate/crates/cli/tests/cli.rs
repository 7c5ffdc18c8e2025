use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn weyr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_weyr")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn temp_file(suffix: &str, body: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::Builder::new().suffix(suffix).tempfile().unwrap();
    f.write_all(body.as_bytes()).unwrap();
    f
}

const ZERO_4: &str = r#"{"field":"q","rows":4,"cols":4,"entries":[
    ["0","0","0","0"],["0","0","0","0"],["0","0","0","0"],["0","0","0","0"]]}"#;

#[test]
fn sierpinski_structure() {
    let out = weyr(&["sierpinski", "4", "--structure"]);
    assert!(out.status.success());
    assert_eq!(json(&out), serde_json::json!([6, 4, 4, 1, 1]));
    let pretty = weyr(&["sierpinski", "6", "--structure", "--output", "pretty"]);
    assert_eq!(String::from_utf8_lossy(&pretty.stdout), "20 15 15 6 6 1 1\n");
    let jordan = weyr(&["sierpinski", "3", "--structure", "--jordan"]);
    assert_eq!(json(&jordan), serde_json::json!([4, 2, 2]));
}

#[test]
fn hilbert() {
    let out = weyr(&["mci-hilbert", "--degrees", "1,1,1"]);
    assert_eq!(json(&out), serde_json::json!([1, 3, 3, 1]));
    let csv = weyr(&["mci-hilbert", "--degrees", "2,1", "--output", "csv"]);
    assert_eq!(String::from_utf8_lossy(&csv.stdout), "1,2,2,1\n");
}

#[test]
fn weyr_of_zero_matrix() {
    let f = temp_file(".json", ZERO_4);
    let out = weyr(&["weyr", "--matrix", f.path().to_str().unwrap(), "--eigenvalue", "0"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["structure"], serde_json::json!([4]));
    assert_eq!(v["rank_ladder"], serde_json::json!([4, 0]));
    let j = weyr(&["jordan", "--matrix", f.path().to_str().unwrap(), "--eigenvalue", "0"]);
    assert_eq!(json(&j)["structure"], serde_json::json!([1, 1, 1, 1]));
}

#[test]
fn csv_matrix_and_all_eigenvalues() {
    let f = temp_file(".csv", "2,1,0\n0,2,0\n0,0,-3\n");
    let out = weyr(&["weyr", "--matrix", f.path().to_str().unwrap()]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v.as_array().unwrap().len(), 2);
    assert_eq!(v[0]["eigenvalue"], "-3");
    assert_eq!(v[0]["structure"], serde_json::json!([1]));
    assert_eq!(v[1]["eigenvalue"], "2");
    assert_eq!(v[1]["structure"], serde_json::json!([1, 1]));
}

#[test]
fn exit_codes() {
    let f = temp_file(".json", ZERO_4);
    let path = f.path().to_str().unwrap();
    let not_eigen = weyr(&["weyr", "--matrix", path, "--eigenvalue", "1"]);
    assert_eq!(not_eigen.status.code(), Some(2));
    assert_eq!(json(&not_eigen)["error"]["code"], "NotAnEigenvalue");

    let small_char = weyr(&["mci-weyr", "--degrees", "2,2", "--field", "fp:3"]);
    assert_eq!(small_char.status.code(), Some(2));
    assert_eq!(json(&small_char)["error"]["code"], "CharacteristicTooSmall");

    let rotation = temp_file(".csv", "0,-1\n1,0\n");
    let non_split = weyr(&["weyr", "--matrix", rotation.path().to_str().unwrap()]);
    assert_eq!(non_split.status.code(), Some(2));
    assert_eq!(json(&non_split)["error"]["code"], "NonSplit");

    let missing = weyr(&["weyr", "--matrix", "/definitely/not/here.json", "--eigenvalue", "0"]);
    assert_eq!(missing.status.code(), Some(1));
    assert_eq!(json(&missing)["error"]["code"], "Io");

    let garbage = temp_file(".json", "{not json");
    let bad = weyr(&["weyr", "--matrix", garbage.path().to_str().unwrap(), "--eigenvalue", "0"]);
    assert_eq!(bad.status.code(), Some(1));

    assert_eq!(weyr(&["sierpinski"]).status.code(), Some(1));
    assert_eq!(weyr(&["mci-hilbert", "--degrees", "1,x"]).status.code(), Some(1));
}

#[test]
fn matrix_output_round_trips() {
    let out = weyr(&["sierpinski", "3"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let m = weyr::ExactMatrix::from_json(&text).unwrap();
    assert_eq!(m, weyr::sierpinski(3, weyr::FieldSpec::Rationals).unwrap());

    // mult matrix of g in the doubling order is the Sierpinski matrix
    let mult = weyr(&["mci-mult", "--degrees", "1,1,1"]);
    let g = weyr::ExactMatrix::from_json(&String::from_utf8(mult.stdout).unwrap()).unwrap();
    assert_eq!(g, m);

    // feed a CLI matrix back in
    let f = temp_file(".json", &text);
    let w = weyr(&["weyr", "--matrix", f.path().to_str().unwrap(), "--eigenvalue", "1"]);
    assert_eq!(json(&w)["structure"], serde_json::json!([3, 3, 1, 1]));
}

#[test]
fn mult_with_explicit_element() {
    let el = temp_file(".json", r#"[{"exponents":[1,0],"coeff":"1"}]"#);
    let out = weyr(&["mci-mult", "--degrees", "1,1", "--element", el.path().to_str().unwrap(), "--output", "csv"]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8_lossy(&out.stdout), "0,1,0,0\n0,0,0,0\n0,0,0,1\n0,0,0,0\n");
    let bad = temp_file(".json", r#"[{"exponents":[2,0],"coeff":"1"}]"#);
    let err = weyr(&["mci-mult", "--degrees", "1,1", "--element", bad.path().to_str().unwrap()]);
    assert_eq!(err.status.code(), Some(2));
}

#[test]
fn compose_reports() {
    let out = weyr(&["compose", "--partition", "3,2,1,1", "--eigenvalue", "1", "--t", "3"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["computed"], serde_json::json!([6, 6, 4, 3, 1, 1]));
    assert_eq!(v["agree"], true);
    let zero = weyr(&["compose", "--partition", "2,1", "--t", "2"]);
    assert_eq!(json(&zero)["computed"], serde_json::json!([4, 2]));
    let emitted = weyr(&["compose", "--partition", "1", "--eigenvalue", "1", "--t", "2", "--emit-matrix", "--output", "csv"]);
    assert_eq!(String::from_utf8_lossy(&emitted.stdout), "1,1\n0,1\n");
}

#[test]
fn lefschetz_in_characteristic_two() {
    let strong = weyr(&["mci-lefschetz", "--degrees", "1,1", "--field", "fp:2"]);
    assert!(strong.status.success());
    let v = json(&strong);
    assert_eq!(v["holds"], false);
    assert_eq!(
        v["witness_failures"],
        serde_json::json!([{"k": 0, "i": 2, "expected_rank": 1, "actual_rank": 0}])
    );
    let weak = weyr(&["mci-lefschetz", "--degrees", "1,1", "--field", "fp:2", "--weak"]);
    assert_eq!(json(&weak)["holds"], true);
}

#[test]
fn general_element() {
    let out = weyr(&["mci-weyr", "--degrees", "1,1,1"]);
    let v = json(&out);
    assert_eq!(v["weyr"], serde_json::json!([3, 3, 1, 1]));
    assert_eq!(v["equal"], true);
    let lin = weyr(&["mci-weyr", "--degrees", "2,2", "--coeffs", "1,-1"]);
    assert!(lin.status.success());
}

#[test]
fn sweeps() {
    let out = weyr(&["verify-sweep", "--max-size", "6", "--t", "2,3", "--eigenvalues", "1"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["failed"], 0);
    assert_eq!(v["passed"], v["total"]);

    let a = weyr(&["verify-sweep", "--random", "10", "--seed", "42"]);
    let b = weyr(&["verify-sweep", "--random", "10", "--seed", "42"]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json(&a)["seed"], 42);

    let guarded = weyr(&["verify-sweep", "--max-size", "3", "--t", "2", "--field", "fp:2"]);
    assert_eq!(guarded.status.code(), Some(2));
    let recorded = weyr(&["verify-sweep", "--max-size", "3", "--t", "2", "--field", "fp:2", "--record"]);
    assert!(recorded.status.success());
    assert!(json(&recorded)["recorded"].as_u64().unwrap() > 0);
}
