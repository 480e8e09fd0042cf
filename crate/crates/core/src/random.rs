//! Seeded generators for exact test data.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

use crate::algebra::AlgebraElement;
use crate::matrix::SquareMatrix;
use crate::scalar::{Field, Scalar};

pub type SeededRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Small rational `n/d` with `|n| ≤ 9`, `1 ≤ d ≤ 5`; Gaussian and cyclotomic
/// fields get independent rational components.
pub fn random_scalar(rng: &mut SeededRng, field: &Field) -> Scalar {
    let rational = |rng: &mut SeededRng| {
        let n = rng.gen_range(-9..=9);
        let d = rng.gen_range(1..=5);
        num_rational::BigRational::new(n.into(), i64::from(d).into())
    };
    match field {
        Field::Rational => Scalar::Rational(rational(rng)),
        Field::Gaussian => Scalar::gaussian(rational(rng), rational(rng)),
        Field::Cyclotomic(n) => {
            let deg = crate::scalar::cyclotomic_modulus(*n).degree();
            Scalar::cyclotomic(*n, (0..deg).map(|_| rational(rng)).collect())
        }
    }
}

pub fn random_element(rng: &mut SeededRng, dim: usize, field: &Field) -> AlgebraElement {
    AlgebraElement::new((0..dim).map(|_| random_scalar(rng, field)).collect())
}

pub fn random_matrix(rng: &mut SeededRng, dim: usize, field: &Field) -> SquareMatrix {
    SquareMatrix::from_fn(dim, field, |_, _| random_scalar(rng, field))
}
