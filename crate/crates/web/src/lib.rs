//! Browser bindings. Every export takes plain strings and numbers and returns a
//! JSON document; failures come back as `{"error": "..."}`.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use algint::catalog::CatalogName;
use algint::cli::parse_coeffs;
use algint::conjugation::PickPolicy;
use algint::matrix::SquareMatrix;
use algint::paragrassmann::{decompose, embed, matrix_of, projector, MatrixDecomposition};
use algint::pipeline::{check_entry, format_element, matrix_rows, paragrassmann_integral};
use algint::scalar::Field;

const MAX_P: usize = 8;

fn respond(result: Result<Value, String>) -> String {
    match result {
        Ok(v) => v.to_string(),
        Err(e) => json!({ "error": e }).to_string(),
    }
}

fn check_p(p: usize) -> Result<(), String> {
    if (1..=MAX_P).contains(&p) {
        Ok(())
    } else {
        Err(format!("p must be between 1 and {MAX_P}"))
    }
}

fn explore(p: usize, coeffs: &str, shift: usize) -> Result<Value, String> {
    check_p(p)?;
    let coeffs = parse_coeffs(coeffs, &Field::Rational).map_err(|e| e.to_string())?;
    let report = paragrassmann_integral(p, &coeffs, shift).map_err(|e| e.to_string())?;
    let f = matrix_of(p, &coeffs).map_err(|e| e.to_string())?;
    let proj = projector(p, shift).map_err(|e| e.to_string())?;
    Ok(json!({
        "x_theta": matrix_rows(&embed(p).map_err(|e| e.to_string())?),
        "f_of_x": matrix_rows(&f),
        "projector": matrix_rows(&proj),
        "product": matrix_rows(&(&f * &proj)),
        "trace": report.result.as_ref().map(|r| r["trace"].clone()),
        "direct": report.result.as_ref().map(|r| r["direct"].clone()),
        "agree": report.passes(),
    }))
}

/// `∫θ^(shift−1) f(θ)` on `G_p` by the trace path and by the C-matrix path,
/// with the matrices involved.
#[wasm_bindgen]
pub fn paragrassmann_explorer(p: usize, coeffs: &str, shift: usize) -> String {
    respond(explore(p, coeffs, shift))
}

fn split_matrix(p: usize, entries: &str) -> Result<SquareMatrix, String> {
    let cells: Vec<&str> = entries
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .collect();
    let size = p + 1;
    if cells.len() != size * size {
        return Err(format!("expected {} entries for a {size}×{size} matrix, got {}", size * size, cells.len()));
    }
    let values = parse_coeffs(&cells.join(","), &Field::Rational).map_err(|e| e.to_string())?;
    SquareMatrix::from_rows(&Field::Rational, values).ok_or_else(|| "not square".to_string())
}

fn decomposition(p: usize, entries: &str) -> Result<Value, String> {
    check_p(p)?;
    let b = split_matrix(p, entries)?;
    let MatrixDecomposition { f_coeffs, b_tilde } = decompose(p, &b).map_err(|e| e.to_string())?;
    let algebra = algint::catalog::paragrassmann_algebra(p).map_err(|e| e.to_string())?;
    let f = algint::AlgebraElement::new(f_coeffs.clone());
    let annihilated = (1..=p + 1).all(|k| projector(p, k).is_ok_and(|e| (&b_tilde * &e).is_zero()));
    Ok(json!({
        "f": format_element(&algebra, &f),
        "f_coeffs": f_coeffs.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "f_of_x": matrix_rows(&matrix_of(p, &f_coeffs).map_err(|e| e.to_string())?),
        "b_tilde": matrix_rows(&b_tilde),
        "annihilated": annihilated,
        "integral": f_coeffs[p].to_string(),
    }))
}

/// Splits a `(p+1)×(p+1)` matrix, given row by row, into `f(X_θ) + B̃`.
#[wasm_bindgen]
pub fn decompose_matrix(p: usize, entries: &str) -> String {
    respond(decomposition(p, entries))
}

fn catalog(name: &str) -> Result<Value, String> {
    let name: CatalogName = name.parse().map_err(|e: algint::AlgebraError| e.to_string())?;
    let too_big = match name {
        CatalogName::Matrix(n) | CatalogName::Torus(n) => n > 4,
        CatalogName::Paragrassmann(n) | CatalogName::Cyclic(n) => n > 12,
        CatalogName::Quaternions => false,
    };
    if too_big {
        return Err("entry too large for the demo".into());
    }
    let entry = name.build().map_err(|e| e.to_string())?;
    let report = check_entry(&entry, &PickPolicy::default());
    Ok(json!({
        "entry": name.to_string(),
        "dim": entry.algebra.dim(),
        "field": entry.algebra.field().to_string(),
        "labels": entry.algebra.labels(),
        "report": serde_json::to_value(&report).map_err(|e| e.to_string())?,
    }))
}

/// Full pipeline on a catalog entry such as `matrix:2` or `torus:3`.
#[wasm_bindgen]
pub fn catalog_check(name: &str) -> String {
    respond(catalog(name))
}
