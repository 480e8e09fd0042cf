//! Exact integration over finite-dimensional self-conjugated associative algebras.
//!
//! An algebra is given by structure constants `x_i x_j = Σ_k f_ijk x_k`. When a
//! symmetric invertible `C` intertwines the right and left regular
//! representations, the completeness relation fixes a unique linear
//! functional `∫` on the algebra; this crate computes it, checks the
//! surrounding identities exactly, and ships a catalog of standard examples.

pub mod algebra;
pub mod catalog;
pub mod cli;
pub mod conjugation;
pub mod derivations;
pub mod error;
pub mod integration;
pub mod io;
pub mod linalg;
pub mod matrix;
pub mod paragrassmann;
pub mod pipeline;
pub mod random;
pub mod scalar;

pub use algebra::{Algebra, AlgebraElement};
pub use conjugation::CMatrix;
pub use error::{AlgebraError, Result};
pub use integration::IntegralFunctional;
pub use matrix::SquareMatrix;
pub use scalar::{Field, Scalar};
