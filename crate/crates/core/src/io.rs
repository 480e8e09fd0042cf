//! JSON files for algebras and matrices.
//!
//! Algebra: `{"name", "dim", "field", "labels", "f": [[i, j, k, "scalar"], …]}`
//! with only nonzero constants listed, sorted by `(i, j, k)`.
//! Matrix: `{"dim", "entries": [[row, col, "scalar"], …]}`, nonzero entries only.

use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::Algebra;
use crate::error::AlgebraError;
use crate::matrix::SquareMatrix;
use crate::scalar::{Field, Scalar};

#[derive(Debug, Error)]
pub enum InputError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Serialize, Deserialize)]
struct AlgebraFile {
    name: String,
    dim: usize,
    field: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
    f: Vec<(usize, usize, usize, String)>,
}

#[derive(Serialize, Deserialize)]
struct MatrixFile {
    dim: usize,
    entries: Vec<(usize, usize, String)>,
}

pub fn algebra_to_json(algebra: &Algebra) -> String {
    let file = AlgebraFile {
        name: algebra.name().to_string(),
        dim: algebra.dim(),
        field: algebra.field().to_string(),
        labels: Some(algebra.labels().to_vec()),
        f: algebra
            .nonzero_constants()
            .map(|(i, j, k, s)| (i, j, k, s.to_string()))
            .collect(),
    };
    serde_json::to_string_pretty(&file).expect("algebra serializes")
}

pub fn algebra_from_json(text: &str) -> Result<Algebra, InputError> {
    let file: AlgebraFile = serde_json::from_str(text)?;
    let field: Field = file.field.parse().map_err(AlgebraError::from)?;
    let triples = file
        .f
        .into_iter()
        .map(|(i, j, k, s)| Ok((i, j, k, Scalar::parse(&s, &field)?)))
        .collect::<Result<Vec<_>, AlgebraError>>()?;
    Ok(Algebra::from_triples(file.name, field, file.dim, triples, file.labels)?.with_identity_resolved())
}

pub fn matrix_to_json(m: &SquareMatrix) -> String {
    let file = MatrixFile {
        dim: m.dim(),
        entries: m.nonzero_entries().map(|(i, j, s)| (i, j, s.to_string())).collect(),
    };
    serde_json::to_string_pretty(&file).expect("matrix serializes")
}

/// Parses a matrix whose entries lie in `field`.
pub fn matrix_from_json(text: &str, field: &Field) -> Result<SquareMatrix, InputError> {
    let file: MatrixFile = serde_json::from_str(text)?;
    let mut m = SquareMatrix::zeros(file.dim, field);
    for (i, j, s) in file.entries {
        for index in [i, j] {
            if index >= file.dim {
                return Err(AlgebraError::IndexOutOfRange { index, dim: file.dim }.into());
            }
        }
        m.set(i, j, Scalar::parse(&s, field).map_err(AlgebraError::from)?);
    }
    Ok(m)
}

fn read(path: &Path) -> Result<String, InputError> {
    std::fs::read_to_string(path).map_err(|source| InputError::Io {
        path: path.display().to_string(),
        source,
    })
}

pub fn read_algebra(path: &Path) -> Result<Algebra, InputError> {
    algebra_from_json(&read(path)?)
}

pub fn read_matrix(path: &Path, field: &Field) -> Result<SquareMatrix, InputError> {
    matrix_from_json(&read(path)?, field)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn torus_roundtrip_is_bit_identical() {
        let t = catalog::noncommutative_torus(3).unwrap();
        let text = algebra_to_json(&t);
        let back = algebra_from_json(&text).unwrap();
        assert_eq!(back, t);
        assert_eq!(algebra_to_json(&back), text);
    }

    #[test]
    fn labels_are_optional() {
        let text = r#"{"name": "z2", "dim": 2, "field": "rational",
            "f": [[0,0,0,"1"],[0,1,1,"1"],[1,0,1,"1"],[1,1,0,"1"]]}"#;
        let a = algebra_from_json(text).unwrap();
        assert_eq!(a.labels(), ["x0", "x1"]);
        assert_eq!(a.identity_index(), Some(0));
    }

    #[test]
    fn malformed_inputs() {
        assert!(matches!(algebra_from_json("{"), Err(InputError::Json(_))));
        let bad_scalar = r#"{"name":"a","dim":1,"field":"rational","f":[[0,0,0,"x"]]}"#;
        assert!(matches!(algebra_from_json(bad_scalar), Err(InputError::Algebra(_))));
        let bad_index = r#"{"name":"a","dim":1,"field":"rational","f":[[0,0,1,"1"]]}"#;
        assert!(matches!(
            algebra_from_json(bad_index),
            Err(InputError::Algebra(AlgebraError::IndexOutOfRange { .. }))
        ));
        let bad_field = r#"{"name":"a","dim":1,"field":"real","f":[]}"#;
        assert!(algebra_from_json(bad_field).is_err());
        assert!(matches!(
            matrix_from_json(r#"{"dim":2,"entries":[[2,0,"1"]]}"#, &Field::Rational),
            Err(InputError::Algebra(_))
        ));
    }

    #[test]
    fn matrix_roundtrip() {
        let c = catalog::matrix_c(2);
        let text = matrix_to_json(c.matrix());
        assert_eq!(&matrix_from_json(&text, &Field::Rational).unwrap(), c.matrix());
    }
}
