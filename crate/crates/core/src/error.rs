use thiserror::Error;

use crate::scalar::Field;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarParseError {
    #[error("cannot parse {input:?} as a scalar of field {field}")]
    Malformed { input: String, field: Field },
    #[error("unknown field descriptor {0:?}")]
    UnknownField(String),
}

#[derive(Debug, Error)]
pub enum AlgebraError {
    #[error("structure constants have shape {got:?}, expected {dim}x{dim}x{dim}")]
    ShapeMismatch { dim: usize, got: Vec<usize> },
    #[error("dimension must be positive")]
    ZeroDimension,
    #[error("structure constant {index:?} lies in field {found}, algebra is over {expected}")]
    MixedFields {
        index: (usize, usize, usize),
        expected: Field,
        found: Field,
    },
    #[error("basis index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("{0} labels given for dimension {1}")]
    LabelCount(usize, usize),
    #[error("element has {got} coefficients over {got_field}, algebra has dimension {dim} over {field}")]
    ElementMismatch {
        dim: usize,
        field: Field,
        got: usize,
        got_field: Field,
    },
    #[error("matrix is {got}x{got}, expected {expected}x{expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("the algebra has no identity element")]
    NoIdentity,
    #[error("C matrix is singular")]
    SingularC,
    #[error("matrix is singular")]
    Singular,
    #[error("completeness relation violated at {} cell(s), first at {:?}", .0.len(), .0.first())]
    CompletenessViolation(Vec<(usize, usize)>),
    #[error("derivation matrix is not nilpotent (d^{0} != 0)")]
    NotNilpotent(usize),
    #[error("matrix does not define a derivation ({0} Leibniz violation(s))")]
    NotDerivation(usize),
    #[error("matrix does not define an automorphism ({0} product-rule violation(s))")]
    NotAutomorphism(usize),
    #[error(transparent)]
    Parse(#[from] ScalarParseError),
}

pub type Result<T, E = AlgebraError> = std::result::Result<T, E>;
