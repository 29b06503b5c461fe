#![allow(dead_code)]

use ccr_hopf::algebra::{Expr, Generator, Presentation, Word};
use ccr_hopf::Scalar;
use proptest::prelude::*;

/// Letters legal in `p`, over modes `0..d`, in both mode bases.
pub fn letters(p: &Presentation, d: u32) -> Vec<Generator> {
    use Generator::*;
    let mut out = vec![I];
    if p.variant().is_deformed() {
        out.extend([K, Kinv]);
    }
    for j in 0..d {
        out.extend([Phi(j), Pi(j), APlus(j), AMinus(j)]);
    }
    out
}

pub fn word(p: &Presentation, d: u32, max_degree: usize) -> impl Strategy<Value = Word> {
    let alphabet = letters(p, d);
    prop::collection::vec(prop::sample::select(alphabet), 0..=max_degree).prop_map(Word)
}

pub fn scalar() -> impl Strategy<Value = Scalar> {
    (-4i64..=4, 1i64..=3, -4i64..=4, 0u8..3).prop_map(|(a, b, c, k)| {
        let z = &Scalar::from_ratio(a, b) + &(&Scalar::from_int(c) * &Scalar::i());
        match k {
            0 => &z * &Scalar::kappa(),
            _ => z,
        }
    })
}

pub fn expr(p: &Presentation, d: u32, max_degree: usize) -> impl Strategy<Value = Expr> {
    prop::collection::vec((word(p, d, max_degree), scalar()), 1..=3).prop_map(Expr::from_terms)
}
