//! Builtin algebras.
//!
//! Pair-indexed bases are flattened by [`pair_index`]: the matrix unit
//! `e^{(n,m)}` of `A_N` and the torus monomial `u^a v^b` both sit at
//! `first · N + second`, 0-based. The circle algebra is represented only by its
//! finite cyclic quotients `Z_n`.

use std::fmt;
use std::str::FromStr;

use crate::algebra::{bool_scalar, Algebra, AlgebraElement};
use crate::conjugation::CMatrix;
use crate::error::{AlgebraError, Result};
use crate::matrix::SquareMatrix;
use crate::paragrassmann::{self, ParagrassmannAlgebra};
use crate::scalar::{Field, Scalar};

const Q: Field = Field::Rational;

/// `(first, second) ↦ first · n + second`.
pub fn pair_index(n: usize, first: usize, second: usize) -> usize {
    debug_assert!(first < n && second < n);
    first * n + second
}

/// Inverse of [`pair_index`].
pub fn pair_of(n: usize, flat: usize) -> (usize, usize) {
    (flat / n, flat % n)
}

fn positive(name: &str, value: usize, min: usize) -> Result<()> {
    if value < min {
        return Err(AlgebraError::InvalidParameter(format!("{name} = {value} < {min}")));
    }
    Ok(())
}

/// `A_N`: `e^{(nm)} e^{(pq)} = δ_{mp} e^{(nq)}`.
pub fn matrix_algebra(n: usize) -> Result<Algebra> {
    positive("N", n, 1)?;
    let labels = (0..n * n)
        .map(|x| {
            let (r, s) = pair_of(n, x);
            format!("e{}{}", r + 1, s + 1)
        })
        .collect();
    let algebra = Algebra::from_rule(format!("matrix:{n}"), Q, n * n, labels, |x, y, z| {
        let (a, b) = pair_of(n, x);
        let (c, d) = pair_of(n, y);
        let (r, s) = pair_of(n, z);
        bool_scalar(b == c && a == r && d == s, &Q)
    });
    Ok(if n == 1 { algebra.with_identity_resolved() } else { algebra })
}

/// `C_{(mn)(rs)} = δ_{ms} δ_{nr}`.
pub fn matrix_c(n: usize) -> CMatrix {
    let m = SquareMatrix::from_fn(n * n, &Q, |x, y| {
        let (a, b) = pair_of(n, x);
        let (r, s) = pair_of(n, y);
        bool_scalar(a == s && b == r, &Q)
    });
    CMatrix::new(m).expect("swap is invertible")
}

pub fn matrix_to_element(n: usize, a: &SquareMatrix) -> Result<AlgebraElement> {
    if a.dim() != n {
        return Err(AlgebraError::DimensionMismatch { expected: n, got: a.dim() });
    }
    Ok(AlgebraElement::new(a.entries().to_vec()))
}

pub fn element_to_matrix(n: usize, a: &AlgebraElement) -> Result<SquareMatrix> {
    if a.dim() != n * n {
        return Err(AlgebraError::DimensionMismatch { expected: n * n, got: a.dim() });
    }
    let field = a.coeffs.first().map(Scalar::field).unwrap_or(Q);
    Ok(SquareMatrix::from_rows(&field, a.coeffs.clone()).expect("square"))
}

/// Basis `1, i, j, k` with `i² = j² = k² = −1`, `ij = k`, `jk = i`, `ki = j`.
pub fn quaternions() -> Algebra {
    // (i, j) -> (sign, k) for the unit quaternions
    fn product(i: usize, j: usize) -> (i64, usize) {
        match (i, j) {
            (0, x) | (x, 0) => (1, x),
            (a, b) if a == b => (-1, 0),
            (a, b) => {
                let c = 6 - a - b;
                if (b + 3 - a) % 3 == 1 { (1, c) } else { (-1, c) }
            }
        }
    }
    let labels = ["1", "i", "j", "k"].map(String::from).to_vec();
    Algebra::from_rule("quaternions", Q, 4, labels, |i, j, k| {
        let (sign, c) = product(i, j);
        if c == k { Scalar::from_int(sign, &Q) } else { Scalar::zero(&Q) }
    })
    .with_identity_resolved()
}

/// `diag(1, −1, −1, −1)`.
pub fn quaternion_c() -> CMatrix {
    let m = SquareMatrix::from_i64(&Q, &[&[1, 0, 0, 0], &[0, -1, 0, 0], &[0, 0, -1, 0], &[0, 0, 0, -1]]);
    CMatrix::new(m).expect("invertible")
}

/// Group algebra of `Z_n`: `x_j x_k = x_{j+k mod n}`.
pub fn cyclic_group_algebra(n: usize) -> Result<Algebra> {
    positive("n", n, 1)?;
    let labels = (0..n).map(|j| format!("g{j}")).collect();
    Ok(Algebra::from_rule(format!("cyclic:{n}"), Q, n, labels, |j, k, l| {
        bool_scalar((j + k) % n == l, &Q)
    })
    .with_identity_resolved())
}

/// `C_{jk} = δ_{j+k ≡ 0 mod n}`.
pub fn cyclic_c(n: usize) -> CMatrix {
    let m = SquareMatrix::from_fn(n, &Q, |j, k| bool_scalar((j + k) % n == 0, &Q));
    CMatrix::new(m).expect("permutation matrix")
}

/// `uv = ζ vu`, `uⁿ = vⁿ = 1` over `Q(ζ_n)`; `u^a v^b · u^c v^d = ζ^{−bc} u^{a+c} v^{b+d}`.
pub fn noncommutative_torus(n: usize) -> Result<Algebra> {
    positive("n", n, 2)?;
    let order = u32::try_from(n).map_err(|_| AlgebraError::InvalidParameter(format!("n = {n}")))?;
    let field = Field::Cyclotomic(order);
    let zeta_powers: Vec<Scalar> = (0..n as i64).map(|k| Scalar::root_of_unity(order, k)).collect();
    let labels = (0..n * n)
        .map(|x| {
            let (a, b) = pair_of(n, x);
            format!("u{a}v{b}")
        })
        .collect();
    let zero = Scalar::zero(&field);
    Ok(Algebra::from_rule(format!("torus:{n}"), field.clone(), n * n, labels, |x, y, z| {
        let (a, b) = pair_of(n, x);
        let (c, d) = pair_of(n, y);
        if pair_index(n, (a + c) % n, (b + d) % n) != z {
            return zero.clone();
        }
        zeta_powers[(n - (b * c) % n) % n].clone()
    })
    .with_identity_resolved())
}

pub fn paragrassmann_algebra(p: usize) -> Result<Algebra> {
    ParagrassmannAlgebra::new(p).map(ParagrassmannAlgebra::into_algebra)
}

/// Anti-diagonal C of `G_p`.
pub fn paragrassmann_c(p: usize) -> CMatrix {
    paragrassmann::antidiagonal_c(p)
}

/// A catalog name with its parameters, written `name:params`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CatalogName {
    Matrix(usize),
    Paragrassmann(usize),
    Quaternions,
    Cyclic(usize),
    Torus(usize),
}

impl fmt::Display for CatalogName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CatalogName::Matrix(n) => write!(f, "matrix:{n}"),
            CatalogName::Paragrassmann(1) => write!(f, "grassmann:1"),
            CatalogName::Paragrassmann(p) => write!(f, "paragrassmann:{p}"),
            CatalogName::Quaternions => write!(f, "quaternions"),
            CatalogName::Cyclic(n) => write!(f, "cyclic:{n}"),
            CatalogName::Torus(n) => write!(f, "torus:{n}"),
        }
    }
}

impl FromStr for CatalogName {
    type Err = AlgebraError;

    fn from_str(s: &str) -> Result<Self> {
        let (name, param) = match s.split_once(':') {
            Some((n, p)) => (n.trim(), Some(p.trim())),
            None => (s.trim(), None),
        };
        let number = || -> Result<usize> {
            let p = param.ok_or_else(|| {
                AlgebraError::InvalidParameter(format!("catalog entry {name:?} needs a parameter"))
            })?;
            p.parse()
                .map_err(|_| AlgebraError::InvalidParameter(format!("bad parameter {p:?} for {name}")))
        };
        match name {
            "matrix" => Ok(CatalogName::Matrix(number()?)),
            "grassmann" => Ok(CatalogName::Paragrassmann(param.map_or(Ok(1), |_| number())?)),
            "paragrassmann" => Ok(CatalogName::Paragrassmann(number()?)),
            "quaternions" if param.is_none() => Ok(CatalogName::Quaternions),
            "cyclic" => Ok(CatalogName::Cyclic(number()?)),
            "torus" => Ok(CatalogName::Torus(number()?)),
            _ => Err(AlgebraError::InvalidParameter(format!("unknown catalog entry {s:?}"))),
        }
    }
}

/// Properties the pipeline must reproduce for an entry.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExpectedProperties {
    pub associative: bool,
    pub unital: bool,
    pub self_conjugated: bool,
    /// Whether `x_i* = x_j C_{ji}` with the entry's C is an involution.
    pub involutive: bool,
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: CatalogName,
    pub algebra: Algebra,
    /// Fixed C for entries with a standard choice; the rest use the solver.
    pub pinned_c: Option<CMatrix>,
    pub expected: ExpectedProperties,
}

impl CatalogName {
    pub fn build(self) -> Result<CatalogEntry> {
        let props = |involutive| ExpectedProperties {
            associative: true,
            unital: true,
            self_conjugated: true,
            involutive,
        };
        let (algebra, pinned_c, expected) = match self {
            CatalogName::Matrix(n) => (matrix_algebra(n)?, Some(matrix_c(n)), props(true)),
            CatalogName::Paragrassmann(p) => {
                (paragrassmann_algebra(p)?, Some(paragrassmann_c(p)), props(false))
            }
            CatalogName::Quaternions => (quaternions(), Some(quaternion_c()), props(true)),
            CatalogName::Cyclic(n) => (cyclic_group_algebra(n)?, Some(cyclic_c(n)), props(true)),
            CatalogName::Torus(n) => (noncommutative_torus(n)?, None, props(true)),
        };
        Ok(CatalogEntry {
            name: self,
            algebra,
            pinned_c,
            expected,
        })
    }
}

/// The entries exercised by the golden tests.
pub fn standard_entries() -> Vec<CatalogName> {
    let mut names: Vec<CatalogName> = (1..=4).map(CatalogName::Matrix).collect();
    names.extend((1..=6).map(CatalogName::Paragrassmann));
    names.push(CatalogName::Quaternions);
    names.extend((1..=8).map(CatalogName::Cyclic));
    names.extend([CatalogName::Torus(2), CatalogName::Torus(3)]);
    names
}
