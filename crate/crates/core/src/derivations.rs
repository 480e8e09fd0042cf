//! Derivations, their exponentials and the integration-by-parts theorem.
//!
//! A derivation acts on basis elements as `Dx_i = Σ_j d_ij x_j`; composition
//! therefore multiplies the row-convention matrices in the same order.

use crate::algebra::{Algebra, AlgebraElement};
use crate::error::{AlgebraError, Result};
use crate::integration::IntegralFunctional;
use crate::linalg::{rank_of, EchelonSystem};
use crate::matrix::SquareMatrix;
use crate::scalar::{Field, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DerivationKind {
    General,
    /// `Dx = xa − ax` for the stored generator `a`.
    Inner(AlgebraElement),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation {
    pub d: SquareMatrix,
    pub kind: DerivationKind,
}

/// Basis of the space of derivations, by elimination over the `dim²`
/// entries of `d` subject to the linearised Leibniz rule.
pub fn derivation_space(algebra: &Algebra) -> Vec<Derivation> {
    let n = algebra.dim();
    let field = algebra.field();
    let unknown = |a: usize, b: usize| a * n + b;
    let mut sys = EchelonSystem::new(n * n, field);
    // Σ_k f_ijk d_kl − d_ik f_kjl − d_jk f_ikl = 0
    for i in 0..n {
        for j in 0..n {
            for l in 0..n {
                let mut terms = Vec::new();
                for k in 0..n {
                    let a = algebra.f(i, j, k);
                    if !a.is_zero() {
                        terms.push((unknown(k, l), a.clone()));
                    }
                    let b = algebra.f(k, j, l);
                    if !b.is_zero() {
                        terms.push((unknown(i, k), -b));
                    }
                    let c = algebra.f(i, k, l);
                    if !c.is_zero() {
                        terms.push((unknown(j, k), -c));
                    }
                }
                sys.add_equation(terms);
            }
        }
    }
    sys.nullspace()
        .into_iter()
        .map(|v| Derivation {
            d: SquareMatrix::from_rows(field, v).expect("square"),
            kind: DerivationKind::General,
        })
        .collect()
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DerivationReport {
    /// `(i, j, l)` where the Leibniz rule fails in the `x_l` coefficient.
    pub leibniz_violations: Vec<(usize, usize, usize)>,
    /// Indices `i` with `[R_i, d] != R_{Dx_i}`.
    pub commutator_violations: Vec<usize>,
    /// `D(I) = 0`, when the algebra has an identity.
    pub kills_identity: Option<bool>,
}

impl DerivationReport {
    pub fn is_derivation(&self) -> bool {
        self.leibniz_violations.is_empty() && self.commutator_violations.is_empty()
    }

    /// The Leibniz and commutator forms are equivalent; they must agree.
    pub fn forms_agree(&self) -> bool {
        self.leibniz_violations.is_empty() == self.commutator_violations.is_empty()
    }
}

pub fn is_derivation(algebra: &Algebra, d: &SquareMatrix) -> Result<DerivationReport> {
    let n = algebra.dim();
    if d.dim() != n {
        return Err(AlgebraError::DimensionMismatch {
            expected: n,
            got: d.dim(),
        });
    }
    let field = algebra.field();
    let image = |i: usize| AlgebraElement::new(d.row(i).to_vec());
    let mut report = DerivationReport::default();
    for i in 0..n {
        let di = image(i);
        for j in 0..n {
            let dj = image(j);
            let lhs = d.left_apply(&algebra.basis_product(i, j).coeffs);
            let xi = AlgebraElement::basis(n, field, i);
            let xj = AlgebraElement::basis(n, field, j);
            let rhs = algebra
                .multiply_unchecked(&di.coeffs, &xj.coeffs)
                .add(&algebra.multiply_unchecked(&xi.coeffs, &dj.coeffs));
            for l in 0..n {
                if lhs[l] != rhs.coeffs[l] {
                    report.leibniz_violations.push((i, j, l));
                }
            }
        }
    }
    for i in 0..n {
        if algebra.right_mult(i).commutator(d) != algebra.right_mult_of(&image(i)) {
            report.commutator_violations.push(i);
        }
    }
    report.kills_identity = algebra
        .find_identity()
        .map(|e| d.left_apply(&e.coeffs).iter().all(Scalar::is_zero));
    Ok(report)
}

/// `d = R_a − L_aᵀ`, i.e. `Dx_i = x_i a − a x_i`.
pub fn inner_derivation(algebra: &Algebra, a: &AlgebraElement) -> Result<Derivation> {
    algebra.check_element(a)?;
    let d = &algebra.right_mult_of(a) - &algebra.left_mult_of(a).transpose();
    Ok(Derivation {
        d,
        kind: DerivationKind::Inner(a.clone()),
    })
}

/// Rank of the span of all inner derivations.
pub fn inner_derivation_rank(algebra: &Algebra) -> usize {
    let n = algebra.dim();
    let vectors: Vec<Vec<Scalar>> = (0..n)
        .map(|i| {
            let e = AlgebraElement::basis(n, algebra.field(), i);
            inner_derivation(algebra, &e).expect("basis element").d.entries().to_vec()
        })
        .collect();
    rank_of(&vectors, algebra.field())
}

/// Whether `d` lies in the span of the inner derivations.
pub fn is_inner(algebra: &Algebra, d: &SquareMatrix) -> bool {
    let n = algebra.dim();
    let mut vectors: Vec<Vec<Scalar>> = (0..n)
        .map(|i| {
            let e = AlgebraElement::basis(n, algebra.field(), i);
            inner_derivation(algebra, &e).expect("basis element").d.entries().to_vec()
        })
        .collect();
    let before = rank_of(&vectors, algebra.field());
    vectors.push(d.entries().to_vec());
    rank_of(&vectors, algebra.field()) == before
}

/// Checks `[M₁, M₁] ⊆ M₁` for `M₁ = span{R_a + L_bᵀ}`.
pub fn multiplication_algebra_closed(algebra: &Algebra) -> bool {
    let reps = algebra.regular_reps();
    let generators: Vec<SquareMatrix> = reps
        .right
        .iter()
        .cloned()
        .chain(reps.left.iter().map(SquareMatrix::transpose))
        .collect();
    let field = algebra.field();
    let mut span: Vec<Vec<Scalar>> = generators.iter().map(|g| g.entries().to_vec()).collect();
    let base = rank_of(&span, field);
    for (a, g) in generators.iter().enumerate() {
        for h in &generators[a + 1..] {
            span.push(g.commutator(h).entries().to_vec());
        }
    }
    rank_of(&span, field) == base
}

/// Integration by parts: `Σ_j d_ij ∫x_j = 0` for every `i`.
pub fn ibp_holds(functional: &IntegralFunctional, d: &SquareMatrix) -> bool {
    d.apply(functional.values()).iter().all(Scalar::is_zero)
}

/// Infinitesimal invariance `d + C⁻¹dᵀC = 0`.
pub fn infinitesimal_invariance(functional: &IntegralFunctional, d: &SquareMatrix) -> bool {
    let c = functional.c();
    (d + &(&(c.inverse() * &d.transpose()) * c.matrix())).is_zero()
}

/// Smallest `m` with `d^m = 0`, if `d` is nilpotent.
pub fn nilpotency_index(d: &SquareMatrix) -> Option<u32> {
    let mut power = SquareMatrix::identity(d.dim(), d.field());
    for m in 0..=d.dim() as u32 {
        if power.is_zero() {
            return Some(m);
        }
        power = &power * d;
    }
    None
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Automorphism {
    s: SquareMatrix,
    inverse: SquareMatrix,
    /// Derivation and parameter it was exponentiated from.
    pub generator: Option<(SquareMatrix, Scalar)>,
}

impl Automorphism {
    /// Validates invertibility and `S(x_i x_j) = S(x_i) S(x_j)` on all pairs.
    pub fn new(algebra: &Algebra, s: SquareMatrix) -> Result<Self> {
        let inverse = s.inverse().ok_or(AlgebraError::Singular)?;
        let violations = product_rule_violations(algebra, &s);
        if violations > 0 {
            return Err(AlgebraError::NotAutomorphism(violations));
        }
        Ok(Automorphism {
            s,
            inverse,
            generator: None,
        })
    }

    pub fn matrix(&self) -> &SquareMatrix {
        &self.s
    }

    pub fn inverse(&self) -> &SquareMatrix {
        &self.inverse
    }
}

fn product_rule_violations(algebra: &Algebra, s: &SquareMatrix) -> usize {
    let n = algebra.dim();
    let mut count = 0;
    for i in 0..n {
        for j in 0..n {
            let lhs = s.left_apply(&algebra.basis_product(i, j).coeffs);
            let rhs = algebra.multiply_unchecked(s.row(i), s.row(j));
            if lhs != rhs.coeffs {
                count += 1;
            }
        }
    }
    count
}

/// `exp(αd)` as a finite sum; only nilpotent `d` is accepted.
pub fn exp_automorphism(algebra: &Algebra, d: &SquareMatrix, alpha: &Scalar) -> Result<Automorphism> {
    let report = is_derivation(algebra, d)?;
    if !report.is_derivation() {
        return Err(AlgebraError::NotDerivation(report.leibniz_violations.len()));
    }
    let index = nilpotency_index(d).ok_or(AlgebraError::NotNilpotent(d.dim()))?;
    let s = exp_nilpotent(d, alpha, index);
    let mut auto = Automorphism::new(algebra, s)?;
    auto.generator = Some((d.clone(), alpha.clone()));
    Ok(auto)
}

fn exp_nilpotent(d: &SquareMatrix, alpha: &Scalar, index: u32) -> SquareMatrix {
    let field = d.field();
    let step = d.scale(alpha);
    let mut term = SquareMatrix::identity(d.dim(), field);
    let mut sum = term.clone();
    for k in 1..index.max(1) {
        term = (&term * &step).scale(&Scalar::from_ratio(1, k as i64, field));
        sum = &sum + &term;
    }
    sum
}

/// `C⁻¹sᵀC = s⁻¹`.
pub fn measure_invariant(functional: &IntegralFunctional, s: &SquareMatrix) -> Result<bool> {
    let inv = s.inverse().ok_or(AlgebraError::Singular)?;
    let c = functional.c();
    Ok(&(c.inverse() * &s.transpose()) * c.matrix() == inv)
}

/// How the exponentiated leg of the theorem was evaluated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExponentPath {
    /// `exp(αd)` summed exactly; `degree_bound` is the degree in α of
    /// `C⁻¹s(α)ᵀC·s(α)`, so `degree_bound + 1` sample points prove the identity.
    Nilpotent { index: u32, degree_bound: u32 },
    /// Diagonal `d` with integer entries: `exp(ln(t)·d) = diag(t^{d_ii})` exactly.
    DiagonalInteger,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExponentSample {
    /// The sampled parameter: `α` on the nilpotent path, `t = e^α` on the diagonal path.
    pub parameter: Scalar,
    pub invariant: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TheoremReport {
    /// (a) `∫Dx_i = 0` for all `i`.
    pub ibp: bool,
    /// (b) `d + C⁻¹dᵀC = 0`.
    pub infinitesimal: bool,
    /// (c) measure invariance of the exponentiated automorphisms, when computable exactly.
    pub exponentiated: Option<(ExponentPath, Vec<ExponentSample>)>,
}

impl TheoremReport {
    pub fn exponentiated_leg(&self) -> Option<bool> {
        self.exponentiated
            .as_ref()
            .map(|(_, samples)| samples.iter().all(|s| s.invariant))
    }

    /// Whether every evaluated leg gives the same verdict.
    pub fn legs_agree(&self) -> bool {
        let exp_consistent = match &self.exponentiated {
            None => true,
            Some((_, samples)) => samples.iter().all(|s| s.invariant == self.ibp),
        };
        self.ibp == self.infinitesimal && exp_consistent
    }

    pub fn all_true(&self) -> bool {
        self.ibp && self.infinitesimal && self.exponentiated_leg().unwrap_or(true)
    }
}

/// Base sample set for α; extended with further small integers when the
/// degree bound needs more points.
pub const ALPHA_SAMPLES: [i64; 3] = [1, 2, -1];

fn alpha_points(needed: usize) -> Vec<i64> {
    let mut points = ALPHA_SAMPLES.to_vec();
    let mut k = 3;
    while points.len() < needed {
        points.push(k);
        if points.len() < needed {
            points.push(1 - k);
        }
        k += 1;
    }
    points
}

fn diagonal_integer(d: &SquareMatrix) -> Option<Vec<i64>> {
    let n = d.dim();
    let mut diag = Vec::with_capacity(n);
    for i in 0..n {
        for j in 0..n {
            if i != j && !d.get(i, j).is_zero() {
                return None;
            }
        }
        let r = d.get(i, i).as_rational()?;
        if !r.is_integer() {
            return None;
        }
        diag.push(i64::try_from(r.to_integer()).ok()?);
    }
    Some(diag)
}

fn power(t: &Scalar, e: i64, field: &Field) -> Scalar {
    let base = if e < 0 { t.inv().expect("nonzero") } else { t.clone() };
    (0..e.unsigned_abs()).fold(Scalar::one(field), |acc, _| &acc * &base)
}

/// Evaluates the chain ibp ⇔ infinitesimal invariance ⇔ invariance of `exp(αd)`.
pub fn theorem_roundtrip(
    algebra: &Algebra,
    functional: &IntegralFunctional,
    d: &SquareMatrix,
) -> Result<TheoremReport> {
    let report = is_derivation(algebra, d)?;
    if !report.is_derivation() {
        return Err(AlgebraError::NotDerivation(report.leibniz_violations.len()));
    }
    let field = algebra.field();
    let ibp = ibp_holds(functional, d);
    let infinitesimal = infinitesimal_invariance(functional, d);
    let exponentiated = if let Some(index) = nilpotency_index(d) {
        let degree_bound = 2 * index.saturating_sub(1);
        let points = alpha_points(degree_bound as usize + 1);
        assert!(points.len() > degree_bound as usize);
        let samples = points
            .into_iter()
            .map(|a| {
                let alpha = Scalar::from_int(a, field);
                let s = exp_nilpotent(d, &alpha, index);
                let invariant = measure_invariant(functional, &s)?;
                Ok(ExponentSample {
                    parameter: alpha,
                    invariant,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Some((ExponentPath::Nilpotent { index, degree_bound }, samples))
    } else if let Some(diag) = diagonal_integer(d) {
        let samples = [(2, 1), (3, 1), (1, 2)]
            .into_iter()
            .map(|(n, m)| {
                let t = Scalar::from_ratio(n, m, field);
                let s = SquareMatrix::from_fn(d.dim(), field, |i, j| {
                    if i == j {
                        power(&t, diag[i], field)
                    } else {
                        Scalar::zero(field)
                    }
                });
                Automorphism::new(algebra, s.clone())?;
                Ok(ExponentSample {
                    parameter: t,
                    invariant: measure_invariant(functional, &s)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Some((ExponentPath::DiagonalInteger, samples))
    } else {
        None
    };
    Ok(TheoremReport {
        ibp,
        infinitesimal,
        exponentiated,
    })
}
