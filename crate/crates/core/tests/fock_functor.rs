mod common;

use ccr_hopf::algebra::{adjoint, normal_form, Basis, Presentation, Variant};
use ccr_hopf::fock::{FockRepresentation, ModeSpace};
use proptest::prelude::*;

fn reps() -> Vec<(Presentation, FockRepresentation)> {
    let space = ModeSpace::with_real_gram(&[vec![1.0, 0.25], vec![0.25, 1.5]], 9).unwrap();
    let mut out = Vec::new();
    for v in [Variant::Undeformed, Variant::DeformedCollapsed, Variant::DeformedStrict] {
        for b in [Basis::PhiPi, Basis::Ladder] {
            let p = Presentation::new(v).with_basis(b).with_gram(ccr_hopf::algebra::Gram::matrix(vec![
                vec![ccr_hopf::Scalar::one(), ccr_hopf::Scalar::from_ratio(1, 4)],
                vec![ccr_hopf::Scalar::from_ratio(1, 4), ccr_hopf::Scalar::from_ratio(3, 2)],
            ]).unwrap());
            let rep = FockRepresentation::for_presentation(space.clone(), &p, (0.8, 1.3)).unwrap();
            out.push((p, rep));
        }
    }
    out
}

fn case() -> impl Strategy<Value = (usize, ccr_hopf::algebra::Expr)> {
    (0..6usize).prop_flat_map(|i| {
        let p = reps()[i].0.clone();
        (Just(i), common::expr(&p, 2, 3))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn representation_factors_through_the_relations((i, e) in case()) {
        let (p, rep) = &reps()[i];
        let safe = rep.space().safe_columns(3);
        let diff = &rep.represent(&e).unwrap() - &rep.represent(&normal_form(&e, p).unwrap()).unwrap();
        prop_assert!(diff.norm_on_columns(&safe) < 1e-10, "{}", diff.norm_on_columns(&safe));
    }

    #[test]
    fn adjoint_is_conjugate_transpose((i, e) in case()) {
        let (_, rep) = &reps()[i];
        // compare on columns and rows away from the cutoff
        let inner = rep.space().safe_columns(6);
        let a = rep.represent(&adjoint(&e)).unwrap().to_dense();
        let b = rep.represent(&e).unwrap().to_dense().adjoint();
        let mut worst: f64 = 0.0;
        for &r in &inner {
            for &c in &inner {
                worst = worst.max((a[(r, c)] - b[(r, c)]).norm());
            }
        }
        prop_assert!(worst < 1e-10, "{worst}");
    }
}
