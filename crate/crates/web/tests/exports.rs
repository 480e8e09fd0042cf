use algint_web::{catalog_check, decompose_matrix, paragrassmann_explorer};
use serde_json::Value;

fn parse(s: String) -> Value {
    serde_json::from_str(&s).unwrap()
}

#[test]
fn explorer_reports_both_paths() {
    let v = parse(paragrassmann_explorer(2, "1, 2, 3", 1));
    assert_eq!(v["trace"], "3");
    assert_eq!(v["direct"], "3");
    assert_eq!(v["agree"], true);
    assert_eq!(v["x_theta"][0][1], "1");
    let v = parse(paragrassmann_explorer(2, "1, 2, 3", 3));
    assert_eq!(v["trace"], "1");
}

#[test]
fn explorer_errors() {
    assert!(parse(paragrassmann_explorer(0, "1", 1))["error"].is_string());
    assert!(parse(paragrassmann_explorer(2, "1,2", 1))["error"].is_string());
    assert!(parse(paragrassmann_explorer(2, "1,2,3", 4))["error"].is_string());
    assert!(parse(paragrassmann_explorer(2, "1,x,3", 1))["error"].is_string());
}

#[test]
fn pauli_decomposition() {
    let v = parse(decompose_matrix(1, "7 7\n3 3"));
    assert_eq!(v["f_coeffs"], serde_json::json!(["3", "7"]));
    assert_eq!(v["b_tilde"], serde_json::json!([["4", "0"], ["3", "0"]]));
    assert_eq!(v["annihilated"], true);
    assert_eq!(v["f"], "3·1 + 7·θ");
    assert!(parse(decompose_matrix(1, "1 2 3"))["error"].is_string());
}

#[test]
fn catalog_entries() {
    let v = parse(catalog_check("quaternions"));
    assert_eq!(v["dim"], 4);
    assert_eq!(v["report"]["integral"][0], "1");
    assert!(v["report"]["checks"].as_array().unwrap().iter().all(|c| c["pass"] == true));
    assert!(parse(catalog_check("matrix:9"))["error"].is_string());
    assert!(parse(catalog_check("nope"))["error"].is_string());
}
