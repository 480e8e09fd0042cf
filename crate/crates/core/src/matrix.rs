//! Dense square matrices over exact scalars.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::scalar::{Field, Scalar};

#[derive(Clone, PartialEq, Eq)]
pub struct SquareMatrix {
    dim: usize,
    field: Field,
    entries: Vec<Scalar>,
}

impl SquareMatrix {
    pub fn zeros(dim: usize, field: &Field) -> Self {
        SquareMatrix {
            dim,
            field: field.clone(),
            entries: vec![Scalar::zero(field); dim * dim],
        }
    }

    pub fn identity(dim: usize, field: &Field) -> Self {
        let mut m = Self::zeros(dim, field);
        for i in 0..dim {
            m.set(i, i, Scalar::one(field));
        }
        m
    }

    pub fn from_fn(dim: usize, field: &Field, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let entries = (0..dim * dim).map(|k| f(k / dim, k % dim)).collect();
        SquareMatrix {
            dim,
            field: field.clone(),
            entries,
        }
    }

    /// Builds from row-major entries; `None` if the length is not a square.
    pub fn from_rows(field: &Field, entries: Vec<Scalar>) -> Option<Self> {
        let dim = (entries.len() as f64).sqrt().round() as usize;
        (dim * dim == entries.len()).then(|| SquareMatrix {
            dim,
            field: field.clone(),
            entries,
        })
    }

    pub fn from_i64(field: &Field, rows: &[&[i64]]) -> Self {
        let dim = rows.len();
        Self::from_fn(dim, field, |i, j| {
            assert_eq!(rows[i].len(), dim, "ragged matrix literal");
            Scalar::from_int(rows[i][j], field)
        })
    }

    /// Single-entry matrix `E_{row,col}` (0-based).
    pub fn unit(dim: usize, field: &Field, row: usize, col: usize) -> Self {
        let mut m = Self::zeros(dim, field);
        m.set(row, col, Scalar::one(field));
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.entries[i * self.dim + j] = v;
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.entries[i * self.dim..(i + 1) * self.dim]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.dim).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        (0..self.dim).all(|i| {
            (0..self.dim).all(|j| {
                let v = self.get(i, j);
                if i == j {
                    v.is_one()
                } else {
                    v.is_zero()
                }
            })
        })
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.dim, &self.field, |i, j| self.get(j, i).clone())
    }

    /// Entrywise complex conjugate.
    pub fn conj(&self) -> Self {
        Self::from_fn(self.dim, &self.field, |i, j| self.get(i, j).conj())
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, &self.field, |i, j| self.get(j, i).conj())
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        SquareMatrix {
            dim: self.dim,
            field: self.field.clone(),
            entries: self.entries.iter().map(|x| x * s).collect(),
        }
    }

    pub fn trace(&self) -> Scalar {
        (0..self.dim).fold(Scalar::zero(&self.field), |acc, i| acc + self.get(i, i))
    }

    /// `[self, other] = self·other − other·self`.
    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }

    /// Row vector times matrix: `(v M)_j = Σ_i v_i M_ij`.
    pub fn left_apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.dim);
        let mut out = vec![Scalar::zero(&self.field); self.dim];
        for (i, vi) in v.iter().enumerate() {
            if vi.is_zero() {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                let m = self.get(i, j);
                if !m.is_zero() {
                    *o += &(vi * m);
                }
            }
        }
        out
    }

    /// Matrix times column vector.
    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.dim);
        (0..self.dim)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(m, x)| !m.is_zero() && !x.is_zero())
                    .fold(Scalar::zero(&self.field), |acc, (m, x)| acc + m * x)
            })
            .collect()
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::identity(self.dim, &self.field);
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Exact inverse by Gauss-Jordan elimination, `None` if singular.
    pub fn inverse(&self) -> Option<Self> {
        let n = self.dim;
        let mut a = self.entries.clone();
        let mut inv = Self::identity(n, &self.field).entries;
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a[r * n + col].is_zero())?;
            if pivot != col {
                for k in 0..n {
                    a.swap(pivot * n + k, col * n + k);
                    inv.swap(pivot * n + k, col * n + k);
                }
            }
            let p = a[col * n + col].inv().expect("nonzero pivot");
            for k in 0..n {
                a[col * n + k] = &a[col * n + k] * &p;
                inv[col * n + k] = &inv[col * n + k] * &p;
            }
            for r in 0..n {
                if r == col || a[r * n + col].is_zero() {
                    continue;
                }
                let factor = a[r * n + col].clone();
                for k in 0..n {
                    if !a[col * n + k].is_zero() {
                        a[r * n + k] = &a[r * n + k] - &(&factor * &a[col * n + k]);
                    }
                    if !inv[col * n + k].is_zero() {
                        inv[r * n + k] = &inv[r * n + k] - &(&factor * &inv[col * n + k]);
                    }
                }
            }
        }
        Some(SquareMatrix {
            dim: n,
            field: self.field.clone(),
            entries: inv,
        })
    }

    pub fn determinant(&self) -> Scalar {
        let n = self.dim;
        let mut a = self.entries.clone();
        let mut det = Scalar::one(&self.field);
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&r| !a[r * n + col].is_zero()) else {
                return Scalar::zero(&self.field);
            };
            if pivot != col {
                for k in 0..n {
                    a.swap(pivot * n + k, col * n + k);
                }
                det = -det;
            }
            let p = a[col * n + col].clone();
            let p_inv = p.inv().expect("nonzero pivot");
            det = &det * &p;
            for r in col + 1..n {
                if a[r * n + col].is_zero() {
                    continue;
                }
                let factor = &a[r * n + col] * &p_inv;
                for k in col..n {
                    if !a[col * n + k].is_zero() {
                        a[r * n + k] = &a[r * n + k] - &(&factor * &a[col * n + k]);
                    }
                }
            }
        }
        det
    }

    /// Nonzero entries as `(row, col, value)`, row-major.
    pub fn nonzero_entries(&self) -> impl Iterator<Item = (usize, usize, &Scalar)> {
        self.entries
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(move |(k, v)| (k / self.dim, k % self.dim, v))
    }
}

impl fmt::Debug for SquareMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for SquareMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.entries.iter().map(|s| s.to_string()).collect();
        let width = cells.iter().map(String::len).max().unwrap_or(1);
        for i in 0..self.dim {
            write!(f, "[")?;
            for j in 0..self.dim {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{:>width$}", cells[i * self.dim + j])?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

impl<'a> Mul<&'a SquareMatrix> for &'a SquareMatrix {
    type Output = SquareMatrix;

    fn mul(self, rhs: &'a SquareMatrix) -> SquareMatrix {
        assert_eq!(self.dim, rhs.dim, "matrix dimension mismatch");
        let n = self.dim;
        let mut out = SquareMatrix::zeros(n, &self.field);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        out.entries[i * n + j] += &(a * b);
                    }
                }
            }
        }
        out
    }
}

impl<'a> Add<&'a SquareMatrix> for &'a SquareMatrix {
    type Output = SquareMatrix;

    fn add(self, rhs: &'a SquareMatrix) -> SquareMatrix {
        assert_eq!(self.dim, rhs.dim, "matrix dimension mismatch");
        SquareMatrix {
            dim: self.dim,
            field: self.field.clone(),
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl<'a> Sub<&'a SquareMatrix> for &'a SquareMatrix {
    type Output = SquareMatrix;

    fn sub(self, rhs: &'a SquareMatrix) -> SquareMatrix {
        assert_eq!(self.dim, rhs.dim, "matrix dimension mismatch");
        SquareMatrix {
            dim: self.dim,
            field: self.field.clone(),
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Neg for &SquareMatrix {
    type Output = SquareMatrix;

    fn neg(self) -> SquareMatrix {
        SquareMatrix {
            dim: self.dim,
            field: self.field.clone(),
            entries: self.entries.iter().map(|a| -a).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_and_determinant() {
        let q = Field::Rational;
        let m = SquareMatrix::from_i64(&q, &[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        assert_eq!(m.determinant(), Scalar::from_int(18, &q));
        let inv = m.inverse().unwrap();
        assert!((&m * &inv).is_identity());
        assert!((&inv * &m).is_identity());

        let singular = SquareMatrix::from_i64(&q, &[&[1, 2], &[2, 4]]);
        assert!(singular.inverse().is_none());
        assert!(singular.determinant().is_zero());

        let swap = SquareMatrix::from_i64(&q, &[&[0, 1], &[1, 0]]);
        assert_eq!(swap.determinant(), Scalar::from_int(-1, &q));
    }

    #[test]
    fn gaussian_adjoint() {
        let g = Field::Gaussian;
        let m = SquareMatrix::from_fn(2, &g, |i, j| {
            Scalar::parse(&format!("{i}+{j} i"), &g).unwrap()
        });
        assert_eq!(m.adjoint().get(0, 1), &Scalar::parse("1-0 i", &g).unwrap());
        assert_eq!(m.adjoint().get(1, 0), &Scalar::parse("0-1i", &g).unwrap());
        assert_eq!(m.adjoint().adjoint(), m);
    }

    #[test]
    fn vector_products() {
        let q = Field::Rational;
        let m = SquareMatrix::from_i64(&q, &[&[1, 2], &[3, 4]]);
        let v = vec![Scalar::from_int(1, &q), Scalar::from_int(-1, &q)];
        assert_eq!(m.apply(&v), vec![Scalar::from_int(-1, &q), Scalar::from_int(-1, &q)]);
        assert_eq!(
            m.left_apply(&v),
            vec![Scalar::from_int(-2, &q), Scalar::from_int(-2, &q)]
        );
    }
}
