use proptest::prelude::*;

use algint::algebra::AlgebraElement;
use algint::catalog;
use algint::conjugation::star;
use algint::derivations::{inner_derivation, is_derivation};
use algint::integration::{scalar_product, IntegralFunctional};
use algint::matrix::SquareMatrix;
use algint::paragrassmann::{decompose, embed, matrix_of, trace_integral};
use algint::scalar::{Field, Scalar};

const Q: Field = Field::Rational;

fn rational() -> impl Strategy<Value = Scalar> {
    (-20i64..=20, 1i64..=7).prop_map(|(n, d)| Scalar::from_ratio(n, d, &Q))
}

fn gaussian() -> impl Strategy<Value = Scalar> {
    (-9i64..=9, 1i64..=5, -9i64..=9, 1i64..=5).prop_map(|(a, b, c, d)| {
        Scalar::gaussian(
            num_rational::BigRational::new(a.into(), b.into()),
            num_rational::BigRational::new(c.into(), d.into()),
        )
    })
}

fn cyclotomic(n: u32, degree: usize) -> impl Strategy<Value = Scalar> {
    prop::collection::vec((-9i64..=9, 1i64..=5), degree).prop_map(move |v| {
        Scalar::cyclotomic(n, v.into_iter().map(|(a, b)| num_rational::BigRational::new(a.into(), b.into())).collect())
    })
}

fn vector(len: usize) -> impl Strategy<Value = Vec<Scalar>> {
    prop::collection::vec(rational(), len)
}

fn field_axioms(a: &Scalar, b: &Scalar, c: &Scalar) -> Result<(), TestCaseError> {
    prop_assert_eq!(&(a * &(b + c)), &(&(a * b) + &(a * c)));
    prop_assert_eq!(&(&(a * b) * c), &(a * &(b * c)));
    prop_assert_eq!(&(a * b), &(b * a));
    prop_assert_eq!(&(&(a - b) + b), a);
    if let Some(inv) = a.inv() {
        prop_assert!((a * &inv).is_one());
    } else {
        prop_assert!(a.is_zero());
    }
    prop_assert_eq!(&a.conj().conj(), a);
    prop_assert_eq!(&(a * b).conj(), &(&a.conj() * &b.conj()));
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rational_field(a in rational(), b in rational(), c in rational()) {
        field_axioms(&a, &b, &c)?;
    }

    #[test]
    fn gaussian_field(a in gaussian(), b in gaussian(), c in gaussian()) {
        field_axioms(&a, &b, &c)?;
    }

    #[test]
    fn cyclotomic_field(a in cyclotomic(5, 4), b in cyclotomic(5, 4), c in cyclotomic(5, 4)) {
        field_axioms(&a, &b, &c)?;
    }

    #[test]
    fn scalar_text_roundtrip(a in gaussian(), b in cyclotomic(7, 6)) {
        prop_assert_eq!(Scalar::parse(&a.to_string(), &Field::Gaussian).unwrap(), a);
        prop_assert_eq!(Scalar::parse(&b.to_string(), &Field::Cyclotomic(7)).unwrap(), b);
    }

    #[test]
    fn matrix_inverse(v in vector(9)) {
        let m = SquareMatrix::from_rows(&Q, v).unwrap();
        match m.inverse() {
            Some(inv) => {
                prop_assert!((&m * &inv).is_identity());
                prop_assert!((&inv * &m).is_identity());
            }
            None => prop_assert!(m.determinant().is_zero()),
        }
    }

    #[test]
    fn quaternion_star_is_antihomomorphism(a in vector(4), b in vector(4)) {
        let h = catalog::quaternions();
        let c = catalog::quaternion_c();
        let (a, b) = (AlgebraElement::new(a), AlgebraElement::new(b));
        let lhs = star(c.matrix(), &h.multiply(&a, &b).unwrap());
        let rhs = h.multiply(&star(c.matrix(), &b), &star(c.matrix(), &a)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn matrix_algebra_is_associative_on_elements(a in vector(9), b in vector(9), c in vector(9)) {
        let alg = catalog::matrix_algebra(3).unwrap();
        let (a, b, c) = (AlgebraElement::new(a), AlgebraElement::new(b), AlgebraElement::new(c));
        let left = alg.multiply(&alg.multiply(&a, &b).unwrap(), &c).unwrap();
        let right = alg.multiply(&a, &alg.multiply(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn matrix_algebra_product_is_matrix_product(a in vector(4), b in vector(4)) {
        let alg = catalog::matrix_algebra(2).unwrap();
        let (ea, eb) = (AlgebraElement::new(a), AlgebraElement::new(b));
        let ma = catalog::element_to_matrix(2, &ea).unwrap();
        let mb = catalog::element_to_matrix(2, &eb).unwrap();
        let product = catalog::element_to_matrix(2, &alg.multiply(&ea, &eb).unwrap()).unwrap();
        prop_assert_eq!(product, &ma * &mb);
    }

    #[test]
    fn scalar_product_matches_coefficients(f in vector(4), g in vector(4)) {
        let alg = catalog::matrix_algebra(2).unwrap();
        let fun = IntegralFunctional::new(&alg, &catalog::matrix_c(2)).unwrap();
        let sp = scalar_product(&alg, &fun, &AlgebraElement::new(f), &AlgebraElement::new(g)).unwrap();
        prop_assert!(sp.consistent());
    }

    #[test]
    fn inner_derivations_satisfy_leibniz(a in vector(4)) {
        let h = catalog::quaternions();
        let d = inner_derivation(&h, &AlgebraElement::new(a)).unwrap();
        let report = is_derivation(&h, &d.d).unwrap();
        prop_assert!(report.is_derivation());
        prop_assert_eq!(report.kills_identity, Some(true));
    }

    #[test]
    fn decomposition_is_linear(a in vector(16), b in vector(16)) {
        let p = 3;
        let ma = SquareMatrix::from_rows(&Q, a).unwrap();
        let mb = SquareMatrix::from_rows(&Q, b).unwrap();
        let da = decompose(p, &ma).unwrap();
        let db = decompose(p, &mb).unwrap();
        let sum = decompose(p, &(&ma + &mb)).unwrap();
        let added: Vec<Scalar> = da.f_coeffs.iter().zip(&db.f_coeffs).map(|(x, y)| x + y).collect();
        prop_assert_eq!(sum.f_coeffs, added);
        prop_assert_eq!(sum.b_tilde, &da.b_tilde + &db.b_tilde);
    }

    #[test]
    fn trace_integral_reads_top_coefficient(f in vector(5), g in vector(4)) {
        let p = 4;
        let mut h = g.clone();
        h.push(f[p].clone());
        prop_assert_eq!(trace_integral(p, &f).unwrap(), f[p].clone());
        prop_assert_eq!(trace_integral(p, &h).unwrap(), trace_integral(p, &f).unwrap());
    }

    #[test]
    fn embedding_is_multiplicative(f in vector(4), g in vector(4)) {
        let p = 3;
        let alg = catalog::paragrassmann_algebra(p).unwrap();
        let fg = alg.multiply(&AlgebraElement::new(f.clone()), &AlgebraElement::new(g.clone())).unwrap();
        prop_assert_eq!(
            matrix_of(p, &fg.coeffs).unwrap(),
            &matrix_of(p, &f).unwrap() * &matrix_of(p, &g).unwrap()
        );
    }
}

#[test]
fn embedding_is_injective_on_monomials() {
    for p in 1..=6 {
        let x = embed(p).unwrap();
        let powers: Vec<SquareMatrix> = (0..=p as u32).map(|k| x.pow(k)).collect();
        for i in 0..powers.len() {
            for j in i + 1..powers.len() {
                assert_ne!(powers[i], powers[j]);
            }
        }
        assert!(x.pow(p as u32 + 1).is_zero());
    }
}

#[test]
fn unitalize_preserves_associativity() {
    for name in catalog::standard_entries() {
        let a = name.build().unwrap().algebra;
        if a.dim() <= 9 {
            assert!(a.unitalize().is_associative(), "{name}");
        }
    }
}
