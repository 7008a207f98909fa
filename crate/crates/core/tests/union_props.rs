mod common;

use common::{even_form, odd_prime, poly};
use linkform::linking::boundary_action;
use linkform::union::{rank_one_union_gram, reglue_by_form_isometry, union_gram, UnionSummary};
use linkform::units::{theta, theta_lift};
use linkform::{FormIsometry, HermitianForm, LaurentPoly, LinkingPresentation, PolyMatrix, TorsionIsometry, UnitDecomposition};
use proptest::prelude::*;

fn sign() -> impl Strategy<Value = i8> {
    prop::sample::select(vec![1i8, -1])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn rank_one_unions(q in odd_prime(), n in -4i64..=4, s in sign(), j in -3i64..=3) {
        let u = theta(n, q).unwrap().times_unit(UnitDecomposition { sign: s, exponent: j });
        let lift = u.poly().lift_balanced();
        let p = LaurentPoly::constant(2 * q as i64);
        let h = TorsionIsometry::rank_one(p.clone(), lift.clone()).unwrap();
        let s = UnionSummary::new(&h).unwrap();
        prop_assert_eq!(s.gram.gram(), &rank_one_union_gram(&p, &lift).unwrap());
        prop_assert!(s.even);
        prop_assert!(s.det_class.is_unit());
        prop_assert_eq!(s.signature_at_1, Some(0));
    }

    #[test]
    fn reglue_preserves_invariants(q in odd_prime(), n in -4i64..=4, s in sign(), k in -3i64..=3) {
        let p = LaurentPoly::constant(2 * q as i64);
        let h = TorsionIsometry::rank_one(p, theta_lift(n, q).unwrap()).unwrap();
        let f = FormIsometry::unit(UnitDecomposition { sign: s, exponent: k });
        let h2 = reglue_by_form_isometry(&h, &f).unwrap();
        let a = UnionSummary::new(&h).unwrap();
        let b = UnionSummary::new(&h2).unwrap();
        prop_assert_eq!(a.even, b.even);
        prop_assert_eq!(a.det_class.is_unit(), b.det_class.is_unit());
        prop_assert_eq!(a.signature_at_1, b.signature_at_1);
    }

    #[test]
    fn unions_along_form_isometries(g in even_form(2, 1, 3), ops in prop::collection::vec((0usize..2, poly(-1, 1, 2)), 0..3)) {
        let mut f = PolyMatrix::identity(2);
        for (i, p) in ops {
            let mut e = PolyMatrix::identity(2);
            e[(i, 1 - i)] = p;
            f = e.mul(&f).unwrap();
        }
        let g0 = f.transpose().mul(g.gram()).unwrap().mul(&f.involute()).unwrap();
        let p0 = LinkingPresentation::new(HermitianForm::new(g0).unwrap()).unwrap();
        let p1 = LinkingPresentation::new(g).unwrap();
        let h = boundary_action(&FormIsometry::new(f).unwrap(), &p0, &p1).unwrap();
        let gram = union_gram(&h).unwrap();
        prop_assert_eq!(gram.rank(), 4);
        prop_assert!(gram.is_even());
        prop_assert!(gram.determinant().unit_decompose().is_some());
        prop_assert_eq!(gram.signature_at_one().unwrap(), 0);
    }
}
