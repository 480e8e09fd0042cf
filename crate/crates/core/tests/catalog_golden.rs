use algint::algebra::AlgebraElement;
use algint::catalog::{self, pair_index, standard_entries, CatalogName};
use algint::conjugation::{find_c, in_space, involution_check, solve_c_space, star, PickPolicy};
use algint::integration::IntegralFunctional;
use algint::io::{algebra_from_json, algebra_to_json};
use algint::matrix::SquareMatrix;
use algint::pipeline::{check_entry, CSource};
use algint::scalar::{Field, Scalar};

const Q: Field = Field::Rational;

fn q(n: i64) -> Scalar {
    Scalar::from_int(n, &Q)
}

#[test]
fn every_entry_matches_expected_properties() {
    for name in standard_entries() {
        let entry = name.build().unwrap();
        let report = check_entry(&entry, &PickPolicy::default());
        assert!(report.passes(), "{name}:\n{}", report.to_text());
    }
}

#[test]
fn solver_pick_is_self_conjugated_everywhere() {
    for name in standard_entries() {
        let entry = name.build().unwrap();
        let report = algint::pipeline::check(&entry.algebra, None, &PickPolicy::default());
        let sc = report.check("self-conjugated").unwrap();
        assert!(sc.pass, "{name}: {}", sc.detail);
        assert!(sc.detail.contains(&CSource::Solver.to_string()));
    }
}

#[test]
fn pinned_matrices_lie_in_solver_space() {
    for name in standard_entries() {
        let entry = name.build().unwrap();
        if let Some(c) = &entry.pinned_c {
            assert!(in_space(&solve_c_space(&entry.algebra), c.matrix()), "{name}");
        }
    }
}

#[test]
fn matrix_two_solver_finds_the_swap() {
    let a = catalog::matrix_algebra(2).unwrap();
    let (space, c) = find_c(&a, &PickPolicy::default());
    assert_eq!(space.len(), 1);
    assert_eq!(c.unwrap().matrix(), catalog::matrix_c(2).matrix());
}

/// Hamilton product on `(w, x, y, z)` written out by hand.
fn hamilton(a: [i64; 4], b: [i64; 4]) -> [i64; 4] {
    let [a0, a1, a2, a3] = a;
    let [b0, b1, b2, b3] = b;
    [
        a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
        a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
        a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
        a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0,
    ]
}

#[test]
fn quaternion_table_matches_hamilton_product() {
    let h = catalog::quaternions();
    for i in 0..4 {
        for j in 0..4 {
            let mut a = [0; 4];
            let mut b = [0; 4];
            a[i] = 1;
            b[j] = 1;
            let expected: Vec<Scalar> = hamilton(a, b).iter().map(|&v| q(v)).collect();
            assert_eq!(h.basis_product(i, j).coeffs, expected, "({i},{j})");
        }
    }
}

#[test]
fn quaternion_conjugation_and_integral() {
    let h = catalog::quaternions();
    let (space, c) = find_c(&h, &PickPolicy::default());
    assert_eq!(space.len(), 1);
    let c = c.unwrap();
    assert_eq!(c.matrix(), catalog::quaternion_c().matrix());
    let fun = IntegralFunctional::new(&h, &c).unwrap();
    assert_eq!(fun.values(), [q(1), q(0), q(0), q(0)]);
    let report = involution_check(&h, c.matrix());
    assert!(report.is_involution && report.star_rep_check);
    let x = AlgebraElement::new(vec![q(1), q(2), q(3), q(4)]);
    assert_eq!(star(c.matrix(), &x).coeffs, [q(1), q(-2), q(-3), q(-4)]);
}

#[test]
fn cyclic_flip_gives_delta_integral() {
    let z = catalog::cyclic_group_algebra(3).unwrap();
    assert!(solve_c_space(&z).len() >= 2);
    let fun = IntegralFunctional::new(&z, &catalog::cyclic_c(3)).unwrap();
    assert_eq!(fun.values(), [q(1), q(0), q(0)]);
}

#[test]
fn cyclic_right_and_left_are_transposes() {
    let z = catalog::cyclic_group_algebra(5).unwrap();
    for i in 0..5 {
        assert_eq!(z.left_mult(i), z.right_mult(i).transpose());
    }
}

#[test]
fn torus_of_order_two() {
    let t = catalog::noncommutative_torus(2).unwrap();
    let field = t.field().clone();
    let x = |a, b| AlgebraElement::basis(4, &field, pair_index(2, a, b));
    let u2v2 = t.multiply(&t.multiply(&x(1, 0), &x(1, 0)).unwrap(), &t.multiply(&x(0, 1), &x(0, 1)).unwrap());
    assert_eq!(u2v2.unwrap(), x(0, 0));
    let (space, c) = find_c(&t, &PickPolicy::default());
    let c = c.unwrap();
    assert!(!space.is_empty());
    assert_eq!(&c.matrix().transpose(), c.matrix());
    let fun = IntegralFunctional::new(&t, &c).unwrap();
    assert!(fun.values()[0].is_one());
    assert!(fun.values()[1..].iter().all(Scalar::is_zero));
}

#[test]
fn torus_of_order_three_uses_primitive_root() {
    let t = catalog::noncommutative_torus(3).unwrap();
    let field = t.field().clone();
    let x = |a, b| AlgebraElement::basis(9, &field, pair_index(3, a, b));
    // v·u = ζ^{-1} u·v
    let vu = t.multiply(&x(0, 1), &x(1, 0)).unwrap();
    assert_eq!(vu, x(1, 1).scale(&Scalar::root_of_unity(3, -1)));
    let zeta = Scalar::root_of_unity(3, 1);
    assert_eq!(&(&zeta * &zeta) * &zeta, Scalar::one(&field));
    assert!(!zeta.is_one());
}

#[test]
fn json_roundtrip_for_every_entry() {
    for name in standard_entries() {
        let a = name.build().unwrap().algebra;
        let text = algebra_to_json(&a);
        let back = algebra_from_json(&text).unwrap();
        assert_eq!(back, a, "{name}");
        assert_eq!(algebra_to_json(&back), text, "{name}");
    }
}

#[test]
fn matrix_algebra_integral_is_trace_for_solver_and_pinned() {
    for n in 1..=3 {
        let a = catalog::matrix_algebra(n).unwrap();
        let (_, c) = find_c(&a, &PickPolicy::default());
        let solver = IntegralFunctional::new(&a, &c.unwrap()).unwrap();
        let pinned = IntegralFunctional::new(&a, &catalog::matrix_c(n)).unwrap();
        assert_eq!(solver.values(), pinned.values());
        let id = SquareMatrix::identity(n, &Q);
        let e = catalog::matrix_to_element(n, &id).unwrap();
        assert_eq!(solver.integrate(&e).unwrap(), q(n as i64));
    }
}

#[test]
fn unknown_names_are_rejected() {
    for bad in ["matrix:0", "torus:1", "cyclic:0", "paragrassmann:0"] {
        let name: CatalogName = bad.parse().unwrap();
        assert!(name.build().is_err(), "{bad}");
    }
}
