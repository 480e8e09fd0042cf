//! The C matrix intertwining the right and left regular representations.
//!
//! An algebra is self-conjugated when some symmetric invertible `C` satisfies
//! `L_i = C R_i C⁻¹` for every basis index. The space of symmetric solutions
//! of the linearised condition `L_i C = C R_i` is computed exactly. Choosing
//! an invertible member is a separate, seeded step; the integral depends on it.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{Algebra, AlgebraElement};
use crate::error::{AlgebraError, Result};
use crate::linalg::EchelonSystem;
use crate::matrix::SquareMatrix;
use crate::scalar::Scalar;

/// A symmetric invertible candidate together with its cached inverse.
///
/// Construction only checks invertibility; use [`verify_self_conjugated`] to
/// audit the intertwining condition of user-supplied matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CMatrix {
    matrix: SquareMatrix,
    inverse: SquareMatrix,
    solution_space_rank: Option<usize>,
}

impl CMatrix {
    pub fn new(matrix: SquareMatrix) -> Result<Self> {
        let inverse = matrix.inverse().ok_or(AlgebraError::SingularC)?;
        debug_assert!((&matrix * &inverse).is_identity());
        Ok(CMatrix {
            matrix,
            inverse,
            solution_space_rank: None,
        })
    }

    pub fn with_rank(mut self, rank: usize) -> Self {
        self.solution_space_rank = Some(rank);
        self
    }

    pub fn matrix(&self) -> &SquareMatrix {
        &self.matrix
    }

    pub fn inverse(&self) -> &SquareMatrix {
        &self.inverse
    }

    /// Dimension of the solution space this matrix was picked from, when solver-chosen.
    pub fn solution_space_rank(&self) -> Option<usize> {
        self.solution_space_rank
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn scaled(&self, s: &Scalar) -> Result<Self> {
        let mut c = CMatrix::new(self.matrix.scale(s))?;
        c.solution_space_rank = self.solution_space_rank;
        Ok(c)
    }
}

/// Basis of `{ C : L_i C = C R_i ∀i, C = Cᵀ }`.
pub fn solve_c_space(algebra: &Algebra) -> Vec<SquareMatrix> {
    let d = algebra.dim();
    let field = algebra.field();
    let unknown = |j: usize, k: usize| j * d + k;
    let mut sys = EchelonSystem::new(d * d, field);
    for j in 0..d {
        for k in j + 1..d {
            sys.add_equation([
                (unknown(j, k), Scalar::one(field)),
                (unknown(k, j), -Scalar::one(field)),
            ]);
        }
    }
    // (L_i C)_{jk} - (C R_i)_{jk} = Σ_m f_{imj} C_{mk} - C_{jm} f_{mik}
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                let terms = (0..d).flat_map(|m| {
                    let l = algebra.f(i, m, j);
                    let r = algebra.f(m, i, k);
                    let mut t = Vec::with_capacity(2);
                    if !l.is_zero() {
                        t.push((unknown(m, k), l.clone()));
                    }
                    if !r.is_zero() {
                        t.push((unknown(j, m), -r));
                    }
                    t
                });
                sys.add_equation(terms);
            }
        }
    }
    sys.nullspace()
        .into_iter()
        .map(|v| SquareMatrix::from_rows(field, v).expect("square"))
        .collect()
}

/// Bounds for the seeded search over the solution space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PickPolicy {
    pub seed: u64,
    pub attempts: usize,
    pub coeff_bound: i64,
}

impl Default for PickPolicy {
    fn default() -> Self {
        PickPolicy {
            seed: 0x5eed_c0de,
            attempts: 64,
            coeff_bound: 8,
        }
    }
}

/// Picks an invertible member of the solution space.
///
/// Basis matrices are tried first, then seeded integer combinations. When an
/// identity element is given, the result is scaled so that the first nonzero
/// entry of `eᵀC⁻¹` (the integral of the basis) equals one. `None` means the
/// search failed within the bounds, not that no invertible member exists.
pub fn pick_invertible_c(
    space: &[SquareMatrix],
    identity: Option<&AlgebraElement>,
    policy: &PickPolicy,
) -> Option<CMatrix> {
    let first = space.first()?;
    let field = first.field().clone();
    let rank = space.len();
    let mut chosen = space
        .iter()
        .find_map(|m| CMatrix::new(m.clone()).ok());
    if chosen.is_none() {
        let mut rng = ChaCha8Rng::seed_from_u64(policy.seed);
        for _ in 0..policy.attempts {
            let mut m = SquareMatrix::zeros(first.dim(), &field);
            for b in space {
                let c = rng.gen_range(-policy.coeff_bound..=policy.coeff_bound);
                if c != 0 {
                    m = &m + &b.scale(&Scalar::from_int(c, &field));
                }
            }
            if let Ok(c) = CMatrix::new(m) {
                chosen = Some(c);
                break;
            }
        }
    }
    let chosen = chosen?.with_rank(rank);
    Some(match identity {
        Some(e) => canonicalize(chosen, e),
        None => chosen,
    })
}

/// Scales `c` so the first nonzero of `eᵀC⁻¹` is one.
pub fn canonicalize(c: CMatrix, identity: &AlgebraElement) -> CMatrix {
    let values = c.inverse().left_apply(&identity.coeffs);
    match values.iter().find(|v| !v.is_zero()) {
        Some(lead) if !lead.is_one() => c.scaled(lead).unwrap_or(c),
        _ => c,
    }
}

/// Solves for the C space and picks an invertible member.
pub fn find_c(algebra: &Algebra, policy: &PickPolicy) -> (Vec<SquareMatrix>, Option<CMatrix>) {
    let space = solve_c_space(algebra);
    let identity = algebra.find_identity();
    let c = pick_invertible_c(&space, identity.as_ref(), policy);
    (space, c)
}

/// Whether `c` lies in the span of `space`.
pub fn in_space(space: &[SquareMatrix], c: &SquareMatrix) -> bool {
    let field = c.field();
    let mut vectors: Vec<Vec<Scalar>> = space.iter().map(|m| m.entries().to_vec()).collect();
    let before = crate::linalg::rank_of(&vectors, field);
    vectors.push(c.entries().to_vec());
    crate::linalg::rank_of(&vectors, field) == before
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SelfConjugacyReport {
    pub symmetric: bool,
    pub invertible: bool,
    /// Indices `i` with `L_i C != C R_i`.
    pub intertwining_violations: Vec<usize>,
    /// Indices `i` with `L_i^D C != C R_i^D`, i.e. `R_iᵀ C != C L_iᵀ`.
    pub opposite_violations: Vec<usize>,
}

impl SelfConjugacyReport {
    pub fn passes(&self) -> bool {
        self.symmetric
            && self.invertible
            && self.intertwining_violations.is_empty()
            && self.opposite_violations.is_empty()
    }
}

/// Checks symmetry, invertibility and both intertwining conditions independently.
pub fn verify_self_conjugated(algebra: &Algebra, c: &SquareMatrix) -> SelfConjugacyReport {
    let reps = algebra.regular_reps();
    let opp_r = reps.opposite_right();
    let opp_l = reps.opposite_left();
    let d = algebra.dim();
    let intertwining_violations = (0..d)
        .filter(|&i| &reps.left[i] * c != c * &reps.right[i])
        .collect();
    let opposite_violations = (0..d)
        .filter(|&i| &opp_l[i] * c != c * &opp_r[i])
        .collect();
    SelfConjugacyReport {
        symmetric: &c.transpose() == c,
        invertible: !c.determinant().is_zero(),
        intertwining_violations,
        opposite_violations,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvolutionReport {
    pub is_involution: bool,
    /// `C C̄ = 1`.
    pub cc_star_check: bool,
    /// `(x_i*)* = x_i` evaluated element-wise.
    pub double_star_check: bool,
    /// Basis pairs with `(x_i x_j)* != x_j* x_i*`.
    pub antihomomorphism_violations: Vec<(usize, usize)>,
    /// `R_{x_i}† = Σ_j R_j C_{ji}` for every `i`.
    pub star_rep_check: bool,
    /// When the star-representation condition holds: `C C† = 1` and `Cᵀ = C`.
    pub unitary_symmetric: Option<bool>,
}

/// `a* = Σ_i ā_i x_i*` with `x_i* = Σ_j x_j C_{ji}`.
pub fn star(c: &SquareMatrix, a: &AlgebraElement) -> AlgebraElement {
    let conj: Vec<Scalar> = a.coeffs.iter().map(Scalar::conj).collect();
    AlgebraElement::new(c.apply(&conj))
}

/// Tests whether `x_i* = x_j C_{ji}` defines an involution and a
/// `*`-representation, and audits the consequence that `C` is unitary and
/// symmetric whenever the star-representation condition holds.
pub fn involution_check(algebra: &Algebra, c: &SquareMatrix) -> InvolutionReport {
    let d = algebra.dim();
    let field = algebra.field();
    let basis = |i: usize| AlgebraElement::basis(d, field, i);
    let cc_star_check = (c * &c.conj()).is_identity();
    let double_star_check = (0..d).all(|i| star(c, &star(c, &basis(i))) == basis(i));
    let images: Vec<AlgebraElement> = (0..d).map(|i| star(c, &basis(i))).collect();
    let mut antihomomorphism_violations = Vec::new();
    for i in 0..d {
        for j in 0..d {
            let lhs = star(c, &algebra.basis_product(i, j));
            let rhs = algebra.multiply_unchecked(&images[j].coeffs, &images[i].coeffs);
            if lhs != rhs {
                antihomomorphism_violations.push((i, j));
            }
        }
    }
    let star_rep_check = (0..d).all(|i| {
        algebra.right_mult(i).adjoint() == algebra.right_mult_of(&AlgebraElement::new(c.column(i)))
    });
    let unitary_symmetric =
        star_rep_check.then(|| (c * &c.adjoint()).is_identity() && &c.transpose() == c);
    InvolutionReport {
        is_involution: cc_star_check && antihomomorphism_violations.is_empty(),
        cc_star_check,
        double_star_check,
        antihomomorphism_violations,
        star_rep_check,
        unitary_symmetric,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::scalar::Field;

    #[test]
    fn grassmann_identity_c_fails_intertwining() {
        let g = catalog::paragrassmann_algebra(1).unwrap();
        let report = verify_self_conjugated(&g, &SquareMatrix::identity(2, &Field::Rational));
        assert!(report.symmetric && report.invertible);
        assert_eq!(report.intertwining_violations, vec![1]);
    }

    #[test]
    fn cyclic_flip_intertwines_identity_does_not() {
        // L_i = R_iᵀ for a commutative algebra, and R_iᵀ = R_{-i} on Z_n
        let z = catalog::cyclic_group_algebra(4).unwrap();
        let report = verify_self_conjugated(&z, &SquareMatrix::identity(4, &Field::Rational));
        assert_eq!(report.intertwining_violations, vec![1, 3]);
        assert!(verify_self_conjugated(&z, catalog::cyclic_c(4).matrix()).passes());
        let space = solve_c_space(&catalog::cyclic_group_algebra(3).unwrap());
        assert_eq!(space.len(), 3);
        assert!(in_space(&space, catalog::cyclic_c(3).matrix()));
    }

    #[test]
    fn empty_space_picks_nothing() {
        assert!(pick_invertible_c(&[], None, &PickPolicy::default()).is_none());
        let zero = SquareMatrix::zeros(2, &Field::Rational);
        let policy = PickPolicy {
            attempts: 4,
            ..PickPolicy::default()
        };
        assert!(pick_invertible_c(&[zero], None, &policy).is_none());
    }

    #[test]
    fn grassmann_antidiagonal_is_not_an_involution() {
        // θ* = 1 and 1* = θ: (1·1)* = θ but 1*·1* = θ² = 0
        let g = catalog::paragrassmann_algebra(1).unwrap();
        let c = SquareMatrix::from_i64(&Field::Rational, &[&[0, 1], &[1, 0]]);
        let report = involution_check(&g, &c);
        assert!(report.cc_star_check);
        assert!(report.double_star_check);
        assert!(report.antihomomorphism_violations.contains(&(0, 0)));
        assert!(!report.is_involution);
        assert!(!report.star_rep_check);
        assert_eq!(report.unitary_symmetric, None);
    }
}
