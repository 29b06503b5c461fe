mod common;

use ccr_hopf::algebra::{
    adjoint, commutator, normal_form, normal_form_with, Basis, Expr, Presentation, Schedule, Variant,
};
use ccr_hopf::scalar::KAPPA;
use ccr_hopf::Scalar;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn presentations() -> Vec<Presentation> {
    let mut out = Vec::new();
    for v in [Variant::Undeformed, Variant::DeformedCollapsed, Variant::DeformedStrict] {
        for b in [Basis::PhiPi, Basis::Ladder] {
            out.push(Presentation::new(v).with_basis(b));
        }
    }
    out
}

#[test]
fn schedules_agree_on_a_thousand_random_words() {
    let ps = presentations();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for n in 0..1000 {
        let p = &ps[n % ps.len()];
        let d = rng.random_range(1..=4);
        let alphabet = common::letters(p, d);
        let len = rng.random_range(0..=8);
        let w = Expr::product(&(0..len).map(|_| alphabet[rng.random_range(0..alphabet.len())]).collect::<Vec<_>>());
        let left = normal_form_with(&w, p, Schedule::Leftmost).unwrap();
        let right = normal_form_with(&w, p, Schedule::Rightmost).unwrap();
        let seeded = normal_form_with(&w, p, Schedule::Seeded(n as u64)).unwrap();
        assert_eq!(left, right, "{w} in {:?}", p.variant());
        assert_eq!(left, seeded, "{w} in {:?}", p.variant());
    }
}

fn any_presentation() -> impl Strategy<Value = Presentation> {
    prop::sample::select(presentations())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn normal_form_is_idempotent((p, e) in any_presentation().prop_flat_map(|p| (Just(p.clone()), common::expr(&p, 2, 4)))) {
        let nf = normal_form(&e, &p).unwrap();
        prop_assert_eq!(normal_form(&nf, &p).unwrap(), nf);
    }

    #[test]
    fn normal_form_is_a_congruence(
        (p, x, y) in any_presentation().prop_flat_map(|p| (Just(p.clone()), common::expr(&p, 2, 3), common::expr(&p, 2, 3)))
    ) {
        let lhs = normal_form(&(&x * &y), &p).unwrap();
        let rhs = normal_form(&(&normal_form(&x, &p).unwrap() * &normal_form(&y, &p).unwrap()), &p).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn adjoint_commutes_with_normal_form((p, e) in any_presentation().prop_flat_map(|p| (Just(p.clone()), common::expr(&p, 2, 4)))) {
        let nf = normal_form(&e, &p).unwrap();
        prop_assert_eq!(normal_form(&adjoint(&e), &p).unwrap(), normal_form(&adjoint(&nf), &p).unwrap());
    }

    #[test]
    fn jacobi_identity(
        (p, x, y, z) in any_presentation().prop_flat_map(|p| {
            (Just(p.clone()), common::expr(&p, 2, 2), common::expr(&p, 2, 2), common::expr(&p, 2, 2))
        })
    ) {
        let c = |a: &Expr, b: &Expr| commutator(a, b, &p).unwrap();
        let sum = &(&c(&x, &c(&y, &z)) + &c(&y, &c(&z, &x))) + &c(&z, &c(&x, &y));
        prop_assert!(normal_form(&sum, &p).unwrap().is_zero());
    }

    #[test]
    fn kappa_one_recovers_the_undeformed_algebra(
        (basis, e) in prop::sample::select(vec![Basis::PhiPi, Basis::Ladder])
            .prop_flat_map(|b| (Just(b), common::expr(&Presentation::undeformed(), 2, 4)))
    ) {
        let deformed = Presentation::collapsed().with_basis(basis);
        let undeformed = Presentation::undeformed().with_basis(basis);
        let one = Scalar::one();
        let at_one = normal_form(&e, &deformed).unwrap().map_coefficients(|c| c.substitute(KAPPA, &one));
        let direct = normal_form(&e.map_coefficients(|c| c.substitute(KAPPA, &one)), &undeformed).unwrap();
        prop_assert_eq!(at_one, direct);
    }
}
