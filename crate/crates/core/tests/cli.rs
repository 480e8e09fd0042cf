use std::process::Command;

use algint::catalog;
use algint::io::{algebra_to_json, matrix_to_json};
use algint::matrix::SquareMatrix;
use algint::scalar::Field;

fn algint(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_algint")).args(args).output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn check_matrix_two() {
    let (code, out, _) = algint(&["check", "--catalog", "matrix:2"]);
    assert_eq!(code, 0);
    assert!(out.contains("associative ✓"));
    assert!(out.contains("unital ✓"));
    assert!(out.contains("self-conjugated ✓"));
    assert!(out.contains("integral: 1 0 0 1"));
}

#[test]
fn integrate_theta() {
    let (code, out, _) = algint(&["integrate", "--catalog", "grassmann:1", "--coeffs", "0,1"]);
    assert_eq!(code, 0);
    assert_eq!(out, "1\n");
}

#[test]
fn malformed_json_is_an_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\"name\": ").unwrap();
    let (code, _, err) = algint(&["check", bad.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("malformed JSON"));
    let (code, _, _) = algint(&["check", "--algebra", dir.path().join("missing.json").to_str().unwrap()]);
    assert_eq!(code, 2);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(algint(&["frobnicate"]).0, 2);
    assert_eq!(algint(&["check"]).0, 2);
    assert_eq!(algint(&["check", "--catalog", "octonions"]).0, 2);
    assert_eq!(algint(&["integrate", "--catalog", "matrix:2", "--coeffs", "1,2"]).0, 2);
    assert_eq!(algint(&["ibp", "--catalog", "matrix:2"]).0, 2);
    assert_eq!(algint(&["paragrassmann", "--p", "2", "--coeffs", "1,2,3", "--shift", "4"]).0, 2);
}

#[test]
fn failed_checks_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("perturbed.json");
    let a = catalog::matrix_algebra(2).unwrap();
    let perturbed = a.with_constant(0, 0, 0, algint::Scalar::from_int(2, &Field::Rational));
    std::fs::write(&path, algebra_to_json(&perturbed)).unwrap();
    let (code, out, _) = algint(&["check", path.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(out.contains("associative ✗"));
}

#[test]
fn supplied_c_is_audited() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.json");
    std::fs::write(&path, matrix_to_json(&SquareMatrix::identity(2, &Field::Rational))).unwrap();
    let (code, out, _) = algint(&["check", "--catalog", "grassmann:1", "--c", path.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(out.contains("self-conjugated ✗"));
    assert!(out.contains("C in solution space ✗"));
    let (code, _, _) = algint(&["check", "--catalog", "matrix:2", "--c", path.to_str().unwrap()]);
    assert_eq!(code, 2);
}

#[test]
fn json_report_schema() {
    let (code, out, _) = algint(&["check", "--catalog", "quaternions", "--json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["c_rank"], 1);
    assert_eq!(v["integral"], serde_json::json!(["1", "0", "0", "0"]));
    for check in v["checks"].as_array().unwrap() {
        assert!(check["name"].is_string() && check["pass"].is_boolean() && check["detail"].is_string());
    }
}

#[test]
fn reports_are_deterministic() {
    for args in [
        &["check", "--catalog", "torus:3", "--json"][..],
        &["cmatrix", "--catalog", "paragrassmann:3", "--seed", "17"][..],
        &["derivations", "--catalog", "matrix:2", "--json"][..],
    ] {
        assert_eq!(algint(args), algint(args), "{args:?}");
    }
}

#[test]
fn theorem_on_grassmann_scaling() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("d.json");
    std::fs::write(&path, r#"{"dim": 2, "entries": [[1, 1, "1"]]}"#).unwrap();
    let (code, out, _) = algint(&["theorem", "--catalog", "grassmann:1", "--d", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.contains("ibp=false infinitesimal=false exponentiated=false"));
    let (code, out, _) = algint(&["ibp", "--catalog", "grassmann:1", "--d", path.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(out.contains("integration by parts ✗"));
}

#[test]
fn theorem_on_inner_generator() {
    let (code, out, _) = algint(&["theorem", "--catalog", "matrix:3", "--generator", "1", "--json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["result"]["exponentiated"], true);
    assert_eq!(v["result"]["exponent"]["path"]["index"], 3);
}

#[test]
fn paragrassmann_shift() {
    let (code, out, _) = algint(&["paragrassmann", "--p", "3", "--coeffs", "1,2,3,4", "--shift", "2", "--json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["result"]["trace"], "3");
    assert_eq!(v["result"]["direct"], "3");
}

#[test]
fn catalog_subcommand() {
    let (code, out, _) = algint(&["catalog"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().filter(|l| l.contains('✓')).count(), catalog::standard_entries().len());
    let (code, out, _) = algint(&["catalog", "--catalog", "torus:2"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("torus:2 ✓"));
}

#[test]
fn cyclotomic_coefficients_on_the_command_line() {
    let (code, out, _) = algint(&["integrate", "--catalog", "torus:2", "--coeffs", "[3],[1],[0],[2]"]);
    assert_eq!(code, 0);
    assert_eq!(out, "[3]\n");
}

#[test]
fn help_exits_zero() {
    let (code, out, _) = algint(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("cyclic:N"));
}
