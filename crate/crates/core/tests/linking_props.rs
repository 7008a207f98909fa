mod common;

use common::{even_form, nonzero_poly, poly, vector};
use linkform::linking::{boundary_action, verify_linking_isometry};
use linkform::matrix::conj_dot;
use linkform::{qclass_equal, FormIsometry, HermitianForm, LaurentPoly, LinkingPresentation, PolyMatrix, QClass, QGroup, RatValue};
use proptest::prelude::*;

fn add(x: &[LaurentPoly], y: &[LaurentPoly]) -> Vec<LaurentPoly> {
    x.iter().zip(y).map(|(a, b)| a + b).collect()
}

fn q1(v: RatValue) -> QClass {
    QClass::new(v, QGroup::Q1).unwrap()
}

fn qt(v: RatValue) -> QClass {
    QClass::new(v, QGroup::QtModZt).unwrap()
}

/// A presentation of rank 1..=3 together with three vectors and a scalar.
fn setup() -> impl Strategy<Value = (LinkingPresentation, Vec<LaurentPoly>, Vec<LaurentPoly>, Vec<LaurentPoly>, LaurentPoly)> {
    (1usize..=3).prop_flat_map(|n| {
        (
            even_form(n, 2, 5),
            vector(n, 1, 4),
            vector(n, 1, 4),
            vector(n, 1, 3),
            poly(-1, 1, 3),
        )
            .prop_map(|(f, x, y, u, r)| (LinkingPresentation::new(f).unwrap(), x, y, u, r))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn hermitian_symmetry((p, x, y, _, _) in setup()) {
        let a = p.boundary_pair(&x, &y).unwrap();
        let b = p.boundary_pair(&y, &x).unwrap();
        prop_assert!(qclass_equal(&a, &qt(b.value().involute())).unwrap());
    }

    #[test]
    fn representative_independence((p, x, y, u, _) in setup()) {
        let gu = p.gram().mul_vec(&u).unwrap();
        let base = p.boundary_pair(&x, &y).unwrap();
        prop_assert!(qclass_equal(&base, &p.boundary_pair(&add(&x, &gu), &y).unwrap()).unwrap());
        prop_assert!(qclass_equal(&base, &p.boundary_pair(&x, &add(&y, &gu)).unwrap()).unwrap());
        let mu = p.mu_partial(&y).unwrap();
        prop_assert!(qclass_equal(&mu, &p.mu_partial(&add(&y, &gu)).unwrap()).unwrap());
        prop_assert!(p.in_image(&gu).unwrap());
    }

    #[test]
    fn polarization((p, x, y, _, _) in setup()) {
        let lhs = p.mu_partial(&add(&x, &y)).unwrap().value()
            .sub(p.mu_partial(&x).unwrap().value())
            .sub(p.mu_partial(&y).unwrap().value());
        let l = p.pair_value(&x, &y).unwrap();
        let rhs = l.add(&l.involute());
        prop_assert!(qclass_equal(&q1(lhs), &q1(rhs)).unwrap());
    }

    #[test]
    fn scaling((p, x, _, _, r) in setup()) {
        let rx: Vec<LaurentPoly> = x.iter().map(|c| &r * c).collect();
        let lhs = p.mu_partial(&rx).unwrap();
        let rhs = p.mu_partial(&x).unwrap().value().mul_poly(&(&r * &r.involute()));
        prop_assert!(qclass_equal(&lhs, &q1(rhs)).unwrap());
    }

    #[test]
    fn compatibility((p, x, _, _, _) in setup()) {
        let mu = p.mu_partial(&x).unwrap();
        let ell = p.boundary_pair(&x, &x).unwrap();
        prop_assert!(qclass_equal(&qt(mu.value().clone()), &ell).unwrap());
    }

    #[test]
    fn alternative_denominators((p, x, y, _, _) in setup(), r in nonzero_poly(-1, 1, 3)) {
        // s = r det(G), z = r adj(G) y
        let z: Vec<LaurentPoly> = p.adj().mul_vec(&y).unwrap().iter().map(|c| &r * c).collect();
        let alt = RatValue::new(conj_dot(&x, &z).unwrap(), &r * p.det()).unwrap();
        prop_assert_eq!(alt, p.pair_value(&x, &y).unwrap());
    }

    #[test]
    fn boundary_action_is_quadratic(g in even_form(2, 1, 4), ops in prop::collection::vec((0usize..2, poly(-1, 1, 2)), 1..3), k in -2i64..=2) {
        let mut f = PolyMatrix::scalar(LaurentPoly::monomial(1, k)).block_sum(&PolyMatrix::identity(1));
        for (i, p) in ops {
            let mut e = PolyMatrix::identity(2);
            e[(i, 1 - i)] = p;
            f = e.mul(&f).unwrap();
        }
        let g0 = f.transpose().mul(g.gram()).unwrap().mul(&f.involute()).unwrap();
        let p0 = LinkingPresentation::new(HermitianForm::new(g0).unwrap()).unwrap();
        let p1 = LinkingPresentation::new(g).unwrap();
        let df = boundary_action(&FormIsometry::new(f).unwrap(), &p0, &p1).unwrap();
        prop_assert!(verify_linking_isometry(&df, true).unwrap());
    }
}
