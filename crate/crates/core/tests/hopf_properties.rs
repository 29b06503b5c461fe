mod common;

use ccr_hopf::algebra::{normal_form, Expr, Presentation, Reducer};
use ccr_hopf::hopf::{antipode, check_respects_relations, coproduct, counit, HopfSpec, TensorExpr};
use proptest::prelude::*;

/// Presentations on which each flavor respects the relations.
fn cases() -> Vec<(HopfSpec, Presentation)> {
    vec![
        (HopfSpec::classical(), Presentation::undeformed().with_idempotent_unit(false)),
        (HopfSpec::deformed(), Presentation::strict()),
    ]
}

#[test]
fn chosen_cases_respect_the_relations() {
    for (h, p) in cases() {
        assert!(check_respects_relations(&h, &p).unwrap().passed(), "{h:?} on {:?}", p.variant());
    }
}

fn case_with_exprs(n: usize, degree: usize) -> impl Strategy<Value = (HopfSpec, Presentation, Vec<Expr>)> {
    prop::sample::select(cases()).prop_flat_map(move |(h, p)| {
        let exprs = prop::collection::vec(common::expr(&p, 2, degree), n);
        (Just(h), Just(p), exprs)
    })
}

fn s_tensor_s(t: &TensorExpr, h: &HopfSpec, p: &Presentation) -> TensorExpr {
    let s = |w: &ccr_hopf::algebra::Word| antipode(&Expr::word(w.clone()), h, p).map(|e| TensorExpr::tensor(&[&e]));
    t.expand_slot(0, s).and_then(|t| t.expand_slot(1, s)).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn coproduct_is_multiplicative((h, p, xs) in case_with_exprs(2, 3)) {
        let r = Reducer::new(&p);
        let (x, y) = (&xs[0], &xs[1]);
        let lhs = coproduct(&(x * y), &h, &p).unwrap();
        let rhs = (&coproduct(x, &h, &p).unwrap() * &coproduct(y, &h, &p).unwrap()).normal_form(&r).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn counit_of_antipode_is_counit((h, p, xs) in case_with_exprs(1, 3)) {
        let e = normal_form(&xs[0], &p).unwrap();
        prop_assert_eq!(counit(&antipode(&e, &h, &p).unwrap(), &h).unwrap(), counit(&e, &h).unwrap());
    }

    #[test]
    fn coproduct_of_antipode_is_flipped((h, p, xs) in case_with_exprs(1, 3)) {
        let r = Reducer::new(&p);
        let e = &xs[0];
        let lhs = coproduct(&antipode(e, &h, &p).unwrap(), &h, &p).unwrap();
        let rhs = s_tensor_s(&coproduct(e, &h, &p).unwrap().flip(), &h, &p).normal_form(&r).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn slot_reduction_is_sound((_h, p, xs) in case_with_exprs(1, 4)) {
        let r = Reducer::new(&p);
        let t = TensorExpr::tensor(&[&xs[0], &Expr::one()]).normal_form(&r).unwrap();
        prop_assert_eq!(t.is_zero(), normal_form(&xs[0], &p).unwrap().is_zero());
    }
}
