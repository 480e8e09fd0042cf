//! Paragrassmann algebras `G_p` (`θ^{p+1} = 0`) realised inside the
//! `(p+1)×(p+1)` matrices, with the integral computed as a projected trace.
//!
//! Index convention: the single-entry matrices `e^{(i,j)}` below use 1-based
//! indices `1 ≤ i, j ≤ p+1`, matching the usual block notation; [`e`] is the
//! only place they are converted to the 0-based storage of [`SquareMatrix`].
//! Coefficient lists are always in powers of θ: `coeffs[k]` multiplies `θ^k`.

use crate::algebra::{bool_scalar, Algebra, AlgebraElement};
use crate::conjugation::CMatrix;
use crate::error::{AlgebraError, Result};
use crate::integration::IntegralFunctional;
use crate::matrix::SquareMatrix;
use crate::random::{random_element, seeded};
use crate::scalar::{Field, Scalar};

const FIELD: Field = Field::Rational;

/// `e^{(i,j)}` of size `p+1`, 1-based.
pub fn e(p: usize, i: usize, j: usize) -> SquareMatrix {
    assert!((1..=p + 1).contains(&i) && (1..=p + 1).contains(&j), "e^({i},{j}) out of range");
    SquareMatrix::unit(p + 1, &FIELD, i - 1, j - 1)
}

fn check_order(p: usize) -> Result<()> {
    if p < 1 {
        return Err(AlgebraError::InvalidParameter(format!("paragrassmann order p = {p} < 1")));
    }
    Ok(())
}

fn check_size(p: usize, m: &SquareMatrix) -> Result<()> {
    if m.dim() != p + 1 {
        return Err(AlgebraError::DimensionMismatch {
            expected: p + 1,
            got: m.dim(),
        });
    }
    Ok(())
}

fn check_coeffs(p: usize, coeffs: &[Scalar]) -> Result<()> {
    if coeffs.len() != p + 1 {
        return Err(AlgebraError::InvalidParameter(format!(
            "expected {} coefficients for p = {p}, got {}",
            p + 1,
            coeffs.len()
        )));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParagrassmannAlgebra {
    p: usize,
    algebra: Algebra,
}

impl ParagrassmannAlgebra {
    /// `x_k = θ^k`, `x_k x_l = x_{k+l}` for `k + l ≤ p` and zero otherwise.
    pub fn new(p: usize) -> Result<Self> {
        check_order(p)?;
        let labels = (0..=p)
            .map(|k| match k {
                0 => "1".to_string(),
                1 => "θ".to_string(),
                _ => format!("θ^{k}"),
            })
            .collect();
        let name = if p == 1 { "grassmann".to_string() } else { format!("paragrassmann:{p}") };
        let algebra = Algebra::from_rule(name, FIELD, p + 1, labels, |k, l, m| {
            bool_scalar(k + l == m, &FIELD)
        })
        .with_identity_resolved();
        Ok(ParagrassmannAlgebra { p, algebra })
    }

    pub fn order(&self) -> usize {
        self.p
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn into_algebra(self) -> Algebra {
        self.algebra
    }
}

/// The anti-diagonal `C_{jk} = δ_{j+k,p}`, normalised so `(C⁻¹)_{0p} = 1`.
pub fn antidiagonal_c(p: usize) -> CMatrix {
    let m = SquareMatrix::from_fn(p + 1, &FIELD, |j, k| bool_scalar(j + k == p, &FIELD));
    CMatrix::new(m).expect("anti-diagonal is invertible")
}

/// `X_θ = Σ_{i=1}^{p} e^{(i,i+1)}`, the image of θ (and equal to `R_1`).
pub fn embed(p: usize) -> Result<SquareMatrix> {
    check_order(p)?;
    let x = (1..=p).fold(SquareMatrix::zeros(p + 1, &FIELD), |acc, i| &acc + &e(p, i, i + 1));
    debug_assert!(x.pow(p as u32 + 1).is_zero());
    Ok(x)
}

/// `f(X_θ) = Σ_k coeffs[k] X_θ^k`.
pub fn matrix_of(p: usize, coeffs: &[Scalar]) -> Result<SquareMatrix> {
    check_coeffs(p, coeffs)?;
    let x = embed(p)?;
    let mut power = SquareMatrix::identity(p + 1, &FIELD);
    let mut out = SquareMatrix::zeros(p + 1, &FIELD);
    for c in coeffs {
        if !c.is_zero() {
            out = &out + &power.scale(c);
        }
        power = &power * &x;
    }
    Ok(out)
}

/// `B = f(X_θ) + B̃`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixDecomposition {
    /// `f_coeffs[k]` multiplies `θ^k`; it is `b_{p+1−k, p+1}` of the last column.
    pub f_coeffs: Vec<Scalar>,
    pub b_tilde: SquareMatrix,
}

/// Splits `B` into its paragrassmann part, read off the last column, and a
/// remainder annihilated by every `e^{(p+1,k)}`.
pub fn decompose(p: usize, b: &SquareMatrix) -> Result<MatrixDecomposition> {
    check_order(p)?;
    check_size(p, b)?;
    let f_coeffs: Vec<Scalar> = (0..=p).map(|k| b.get(p - k, p).clone()).collect();
    let b_tilde = b - &matrix_of(p, &f_coeffs)?;
    debug_assert!(b_tilde.column(p).iter().all(Scalar::is_zero));
    Ok(MatrixDecomposition { f_coeffs, b_tilde })
}

/// `e^{(p+1,k)}`; `k = 1` is the default projector.
pub fn projector(p: usize, k: usize) -> Result<SquareMatrix> {
    check_order(p)?;
    if !(1..=p + 1).contains(&k) {
        return Err(AlgebraError::InvalidParameter(format!(
            "projector shift k = {k} outside 1..={}",
            p + 1
        )));
    }
    Ok(e(p, p + 1, k))
}

/// `Tr[f(X_θ) e^{(p+1,k)}]`.
pub fn trace_integral_shifted(p: usize, coeffs: &[Scalar], k: usize) -> Result<Scalar> {
    let f = matrix_of(p, coeffs)?;
    Ok((&f * &projector(p, k)?).trace())
}

/// `∫f(θ) = Tr[f(X_θ) e^{(p+1,1)}]`.
pub fn trace_integral(p: usize, coeffs: &[Scalar]) -> Result<Scalar> {
    trace_integral_shifted(p, coeffs, 1)
}

/// `∫θ^{k−1} f(θ)` from `∫θ^j = δ_{jp}`: the coefficient of `θ^{p−k+1}`.
pub fn direct_integral_shifted(p: usize, coeffs: &[Scalar], k: usize) -> Result<Scalar> {
    check_coeffs(p, coeffs)?;
    if !(1..=p + 1).contains(&k) {
        return Err(AlgebraError::InvalidParameter(format!("shift k = {k} outside 1..={}", p + 1)));
    }
    Ok(coeffs[p + 1 - k].clone())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivalenceReport {
    pub p: usize,
    /// `(k, trace path, C-matrix path)` for each monomial `θ^k`.
    pub monomials: Vec<(usize, Scalar, Scalar)>,
    pub random_samples: usize,
    pub random_mismatches: usize,
    /// `∫θ^p` on the C-matrix path; the two paths agree only when this is one.
    pub normalization: Scalar,
}

impl EquivalenceReport {
    pub fn passes(&self) -> bool {
        self.random_mismatches == 0 && self.monomials.iter().all(|(_, t, c)| t == c)
    }

    pub fn normalized(&self) -> bool {
        self.normalization.is_one()
    }
}

/// Compares the projected trace with the integral induced by `c` (the pinned
/// anti-diagonal when `None`) on every monomial and on seeded random elements.
pub fn equivalence_check(
    p: usize,
    c: Option<&CMatrix>,
    samples: usize,
    seed: u64,
) -> Result<EquivalenceReport> {
    let g = ParagrassmannAlgebra::new(p)?;
    let pinned;
    let c = match c {
        Some(c) => c,
        None => {
            pinned = antidiagonal_c(p);
            &pinned
        }
    };
    let functional = IntegralFunctional::new(g.algebra(), c)?;
    let monomials = (0..=p)
        .map(|k| {
            let x = AlgebraElement::basis(p + 1, &FIELD, k);
            Ok((k, trace_integral(p, &x.coeffs)?, functional.integrate(&x)?))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut rng = seeded(seed);
    let mut random_mismatches = 0;
    for _ in 0..samples {
        let f = random_element(&mut rng, p + 1, &FIELD);
        if trace_integral(p, &f.coeffs)? != functional.integrate(&f)? {
            random_mismatches += 1;
        }
    }
    let normalization = functional.values()[p].clone();
    Ok(EquivalenceReport {
        p,
        monomials,
        random_samples: samples,
        random_mismatches,
        normalization,
    })
}
