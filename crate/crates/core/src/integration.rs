//! The integral functional induced by a C matrix.
//!
//! With the identity `I = Σ_i e_i x_i`, contracting the completeness relation
//! `Σ_{k,p} f_{ikp} C_{kj} ∫x_p = δ_ij` with `e_i` gives `∫x_j = (eᵀC⁻¹)_j`.
//! When the identity is the basis element `x_0` this is row 0 of `C⁻¹`; for
//! off-basis identities (the matrix algebras) the contraction plays the role
//! of the change of basis that puts `I` at index 0.

use crate::algebra::{Algebra, AlgebraElement};
use crate::conjugation::CMatrix;
use crate::error::{AlgebraError, Result};
use crate::matrix::SquareMatrix;
use crate::scalar::{Field, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegralFunctional {
    values: Vec<Scalar>,
    c: CMatrix,
    identity: AlgebraElement,
}

impl IntegralFunctional {
    /// Builds `∫x_j = (eᵀC⁻¹)_j` and verifies the completeness relation exactly.
    pub fn new(algebra: &Algebra, c: &CMatrix) -> Result<Self> {
        if c.dim() != algebra.dim() {
            return Err(AlgebraError::DimensionMismatch {
                expected: algebra.dim(),
                got: c.dim(),
            });
        }
        let identity = algebra.find_identity().ok_or(AlgebraError::NoIdentity)?;
        let values = c.inverse().left_apply(&identity.coeffs);
        let functional = IntegralFunctional {
            values,
            c: c.clone(),
            identity,
        };
        let report = verify_completeness(algebra, &functional);
        if !report.ket_bra.is_empty() {
            return Err(AlgebraError::CompletenessViolation(report.ket_bra));
        }
        Ok(functional)
    }

    /// Assembles a functional without any verification.
    ///
    /// Used to audit [`verify_completeness`] against injected faults.
    pub fn from_raw_parts(values: Vec<Scalar>, c: CMatrix, identity: AlgebraElement) -> Self {
        IntegralFunctional {
            values,
            c,
            identity,
        }
    }

    /// `values[j] = ∫x_j`.
    pub fn values(&self) -> &[Scalar] {
        &self.values
    }

    pub fn c(&self) -> &CMatrix {
        &self.c
    }

    /// Coefficients of the identity element the values were read off with.
    pub fn identity(&self) -> &AlgebraElement {
        &self.identity
    }

    pub fn dim(&self) -> usize {
        self.values.len()
    }

    pub fn field(&self) -> &Field {
        self.c.matrix().field()
    }

    /// `∫f = Σ_j f_j ∫x_j`.
    pub fn integrate(&self, f: &AlgebraElement) -> Result<Scalar> {
        if f.dim() != self.dim() {
            return Err(AlgebraError::ElementMismatch {
                dim: self.dim(),
                field: self.field().clone(),
                got: f.dim(),
                got_field: self.field().clone(),
            });
        }
        Ok(f.coeffs
            .iter()
            .zip(&self.values)
            .filter(|(a, _)| !a.is_zero())
            .fold(Scalar::zero(self.field()), |acc, (a, v)| acc + a * v))
    }

    /// `W_{ik} = ∫x_i x_k`.
    fn product_integrals(&self, algebra: &Algebra) -> SquareMatrix {
        let d = algebra.dim();
        SquareMatrix::from_fn(d, algebra.field(), |i, k| {
            (0..d).fold(Scalar::zero(algebra.field()), |acc, p| {
                let f = algebra.f(i, k, p);
                if f.is_zero() {
                    acc
                } else {
                    acc + f * &self.values[p]
                }
            })
        })
    }
}

/// Cells where either ordering of the completeness relation fails.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CompletenessReport {
    /// `∫|x⟩⟨xC| = 1`, entry `(i, j) = Σ_{k,p} f_{ikp} C_{kj} ∫x_p`.
    pub ket_bra: Vec<(usize, usize)>,
    /// `∫|xC⟩⟨x| = 1`, entry `(i, j) = Σ_{k,p} C_{ki} f_{kjp} ∫x_p`.
    pub bra_ket: Vec<(usize, usize)>,
}

impl CompletenessReport {
    pub fn holds(&self) -> bool {
        self.ket_bra.is_empty() && self.bra_ket.is_empty()
    }
}

fn off_identity(m: &SquareMatrix) -> Vec<(usize, usize)> {
    let d = m.dim();
    (0..d * d)
        .map(|n| (n / d, n % d))
        .filter(|&(i, j)| {
            let v = m.get(i, j);
            if i == j {
                !v.is_one()
            } else {
                !v.is_zero()
            }
        })
        .collect()
}

pub fn verify_completeness(algebra: &Algebra, functional: &IntegralFunctional) -> CompletenessReport {
    let w = functional.product_integrals(algebra);
    let c = functional.c().matrix();
    CompletenessReport {
        ket_bra: off_identity(&(&w * c)),
        bra_ket: off_identity(&(&c.transpose() * &w)),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScalarProduct {
    /// `∫⟨f|xC⟩⟨x|g⟩`.
    pub value: Scalar,
    /// `Σ f̄_i g_i`.
    pub direct: Scalar,
}

impl ScalarProduct {
    pub fn consistent(&self) -> bool {
        self.value == self.direct
    }
}

/// Evaluates `⟨f|g⟩` both through the integral and as `Σ f̄_i g_i`.
pub fn scalar_product(
    algebra: &Algebra,
    functional: &IntegralFunctional,
    f: &AlgebraElement,
    g: &AlgebraElement,
) -> Result<ScalarProduct> {
    algebra.check_element(f)?;
    algebra.check_element(g)?;
    let field = algebra.field();
    // f*(x) = Σ_ij f̄_i x_j C_ji  →  coefficient vector C f̄
    let conj: Vec<Scalar> = f.coeffs.iter().map(Scalar::conj).collect();
    let f_star = AlgebraElement::new(functional.c().matrix().apply(&conj));
    let product = algebra.multiply(&f_star, g)?;
    let value = functional.integrate(&product)?;
    let direct = conj
        .iter()
        .zip(&g.coeffs)
        .fold(Scalar::zero(field), |acc, (a, b)| acc + a * b);
    Ok(ScalarProduct { value, direct })
}

/// `∫A = Tr(A)` on the `n × n` matrix algebra.
pub fn trace_integral_matrix_algebra(n: usize, a: &SquareMatrix) -> Result<Scalar> {
    if a.dim() != n {
        return Err(AlgebraError::DimensionMismatch {
            expected: n,
            got: a.dim(),
        });
    }
    Ok(a.trace())
}
