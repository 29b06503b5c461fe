//! Normal ordering by adjacent-swap rewriting.
//!
//! A redex is an adjacent pair `x y` with `x > y` in the generator order,
//! the pair `I I` when `I` is idempotent, or `K Kinv` / `Kinv K`. Every
//! step strictly decreases (number of mode letters, length, inversions)
//! lexicographically, so reduction terminates. Which redex is contracted
//! first is chosen by a [`Schedule`]; all schedules must agree.

use std::cell::RefCell;
use std::collections::HashMap;
use std::hash::{Hash, Hasher};

use super::expr::Expr;
use super::generator::{Basis, Generator, Word};
use super::presentation::{Presentation, Variant};
use super::AlgebraError;
use crate::scalar::Scalar;

/// Choice of redex at each step.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Schedule {
    #[default]
    Leftmost,
    Rightmost,
    /// Pseudo-random but a pure function of (seed, word).
    Seeded(u64),
}

fn word_hash(seed: u64, w: &Word) -> u64 {
    let mut h = std::collections::hash_map::DefaultHasher::new();
    seed.hash(&mut h);
    w.hash(&mut h);
    h.finish()
}

/// Memoising reducer bound to one presentation.
pub struct Reducer<'p> {
    p: &'p Presentation,
    unit: Expr,
    schedule: Schedule,
    cache: RefCell<HashMap<Word, Expr>>,
}

impl<'p> Reducer<'p> {
    pub fn new(p: &'p Presentation) -> Self {
        Reducer::with_schedule(p, Schedule::default())
    }

    pub fn with_schedule(p: &'p Presentation, schedule: Schedule) -> Self {
        Reducer {
            p,
            unit: p.ccr_unit(),
            schedule,
            cache: RefCell::new(HashMap::new()),
        }
    }

    pub fn presentation(&self) -> &Presentation {
        self.p
    }

    pub fn reduce(&self, e: &Expr) -> Result<Expr, AlgebraError> {
        validate(e, self.p)?;
        let e = prepare(e, self.p);
        let mut out = Expr::zero();
        for (w, c) in e.terms() {
            let nf = self.reduce_word(w);
            out.add_scaled(&nf, c);
        }
        Ok(out)
    }

    /// Normal form of a word that is already in the presentation's basis
    /// with `K` handled; no validation.
    pub(crate) fn reduce_word(&self, w: &Word) -> Expr {
        if let Some(hit) = self.cache.borrow().get(w) {
            return hit.clone();
        }
        let redexes = self.redexes(w);
        let nf = if redexes.is_empty() {
            Expr::word(w.clone())
        } else {
            let pos = match self.schedule {
                Schedule::Leftmost => redexes[0],
                Schedule::Rightmost => redexes[redexes.len() - 1],
                Schedule::Seeded(seed) => {
                    redexes[(word_hash(seed, w) % redexes.len() as u64) as usize]
                }
            };
            let mut acc = Expr::zero();
            for (w2, c) in self.step(w, pos).terms() {
                let sub = self.reduce_word(w2);
                acc.add_scaled(&sub, c);
            }
            acc
        };
        self.cache.borrow_mut().insert(w.clone(), nf.clone());
        nf
    }

    /// Single rewrite of a two-letter word, `None` when it is normal.
    pub fn reduce_one_step(&self, w: &Word) -> Option<Expr> {
        match w.letters() {
            [x, y] if self.is_redex(*x, *y) => Some(self.step(w, 0)),
            _ => None,
        }
    }

    fn is_redex(&self, x: Generator, y: Generator) -> bool {
        use Generator::*;
        match (x, y) {
            (I, I) => self.p.idempotent_unit(),
            (K, Kinv) | (Kinv, K) => true,
            _ => x > y,
        }
    }

    fn redexes(&self, w: &Word) -> Vec<usize> {
        w.letters()
            .windows(2)
            .enumerate()
            .filter(|(_, pair)| self.is_redex(pair[0], pair[1]))
            .map(|(i, _)| i)
            .collect()
    }

    /// One rewrite of the pair at positions `i, i+1`.
    fn step(&self, w: &Word, i: usize) -> Expr {
        use Generator::*;
        let letters = w.letters();
        let (x, y) = (letters[i], letters[i + 1]);
        let splice = |mid: &[Generator]| -> Word {
            let mut v = Vec::with_capacity(letters.len() + mid.len());
            v.extend_from_slice(&letters[..i]);
            v.extend_from_slice(mid);
            v.extend_from_slice(&letters[i + 2..]);
            Word(v)
        };
        match (x, y) {
            (I, I) => return Expr::word(splice(&[I])),
            (K, Kinv) | (Kinv, K) => return Expr::word(splice(&[])),
            _ => {}
        }
        let mut out = Expr::word(splice(&[y, x]));
        let extra = match (x, y) {
            (Pi(j), Phi(k)) => Some(-&(&Scalar::i() * &self.p.gram_entry(j, k))),
            (AMinus(j), APlus(k)) => Some(self.p.gram_entry(j, k)),
            _ => None,
        };
        if let Some(c) = extra {
            if !c.is_zero() {
                let prefix = Expr::word(Word(letters[..i].to_vec()));
                let suffix = Expr::word(Word(letters[i + 2..].to_vec()));
                let inserted = &(&prefix * &self.unit) * &suffix;
                out.add_scaled(&inserted, &c);
            }
        }
        out
    }
}

fn validate(e: &Expr, p: &Presentation) -> Result<(), AlgebraError> {
    for g in e.generators() {
        if !p.is_legal(g) {
            return Err(AlgebraError::IllegalGenerator {
                generator: g,
                variant: p.variant(),
            });
        }
    }
    Ok(())
}

/// `a+(j) = (phi(j) - i pi(j))/r2`, `a-(j) = (phi(j) + i pi(j))/r2`.
pub(crate) fn ladder_in_phi_pi(g: Generator) -> Option<Expr> {
    let inv_r2 = Scalar::r2().inv().expect("nonzero");
    let (j, sign) = match g {
        Generator::APlus(j) => (j, -Scalar::one()),
        Generator::AMinus(j) => (j, Scalar::one()),
        _ => return None,
    };
    let phi = Expr::gen(Generator::Phi(j));
    let pi = Expr::gen(Generator::Pi(j)).scale(&(&sign * &Scalar::i()));
    Some((&phi + &pi).scale(&inv_r2))
}

/// `phi(j) = (a+(j) + a-(j))/r2`, `pi(j) = i (a+(j) - a-(j))/r2`.
pub(crate) fn phi_pi_in_ladder(g: Generator) -> Option<Expr> {
    let inv_r2 = Scalar::r2().inv().expect("nonzero");
    match g {
        Generator::Phi(j) => {
            let e = &Expr::gen(Generator::APlus(j)) + &Expr::gen(Generator::AMinus(j));
            Some(e.scale(&inv_r2))
        }
        Generator::Pi(j) => {
            let e = &Expr::gen(Generator::APlus(j)) - &Expr::gen(Generator::AMinus(j));
            Some(e.scale(&(&Scalar::i() * &inv_r2)))
        }
        _ => None,
    }
}

/// Rewrites foreign-basis generators into the presentation's basis and
/// eliminates `K`, `Kinv` where the presentation says so.
fn prepare(e: &Expr, p: &Presentation) -> Expr {
    let basis = p.basis();
    e.substitute(|g| {
        if let Some(k) = p.k_substitution(g) {
            return Some(k);
        }
        match (g.basis(), basis) {
            (Some(Basis::Ladder), Basis::PhiPi) => ladder_in_phi_pi(g),
            (Some(Basis::PhiPi), Basis::Ladder) => phi_pi_in_ladder(g),
            _ => None,
        }
    })
}

/// Normal form modulo the relations of `p`.
pub fn normal_form(e: &Expr, p: &Presentation) -> Result<Expr, AlgebraError> {
    Reducer::new(p).reduce(e)
}

pub fn normal_form_with(e: &Expr, p: &Presentation, schedule: Schedule) -> Result<Expr, AlgebraError> {
    Reducer::with_schedule(p, schedule).reduce(e)
}

pub fn commutator(x: &Expr, y: &Expr, p: &Presentation) -> Result<Expr, AlgebraError> {
    normal_form(&(&(x * y) - &(y * x)), p)
}

/// Anti-linear anti-automorphism: reverses words, conjugates
/// coefficients, swaps `a+` and `a-`, fixes everything else.
pub fn adjoint(e: &Expr) -> Expr {
    Expr::from_terms(e.terms().map(|(w, c)| {
        let letters = w
            .letters()
            .iter()
            .rev()
            .map(|&g| match g {
                Generator::APlus(j) => Generator::AMinus(j),
                Generator::AMinus(j) => Generator::APlus(j),
                other => other,
            })
            .collect();
        (Word(letters), c.conj())
    }))
}

/// Normal form in the other mode basis.
pub fn basis_convert(e: &Expr, target: Basis, p: &Presentation) -> Result<Expr, AlgebraError> {
    normal_form(e, &p.clone().with_basis(target))
}

/// Eliminates `K -> 1 + (s-1) I`, `Kinv -> 1 + (s^-1 - 1) I` and normal-forms.
pub fn expand_k(e: &Expr, p: &Presentation) -> Result<Expr, AlgebraError> {
    if p.variant() != Variant::DeformedCollapsed {
        return Err(AlgebraError::WrongVariant {
            op: "expand_k",
            variant: p.variant(),
        });
    }
    normal_form(e, p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::presentation::Gram;
    use Generator::*;

    fn g(x: Generator) -> Expr {
        Expr::gen(x)
    }

    fn minus_i(c: Scalar) -> Scalar {
        -&(&Scalar::i() * &c)
    }

    #[test]
    fn pi_phi_deformed() {
        let p = Presentation::collapsed();
        let nf = normal_form(&(&g(Pi(0)) * &g(Phi(0))), &p).unwrap();
        let expected = &Expr::product(&[Phi(0), Pi(0)]) + &g(I).scale(&minus_i(Scalar::kappa()));
        assert_eq!(nf, expected);
    }

    #[test]
    fn orthogonal_modes_already_normal() {
        let p = Presentation::collapsed();
        let e = Expr::product(&[Phi(0), Pi(1)]);
        assert_eq!(normal_form(&e, &p).unwrap(), e);
        let e = Expr::product(&[Pi(1), Phi(0)]);
        assert_eq!(normal_form(&e, &p).unwrap(), Expr::product(&[Phi(0), Pi(1)]));
    }

    #[test]
    fn idempotent_unit() {
        let p = Presentation::undeformed();
        assert_eq!(normal_form(&Expr::product(&[I, I]), &p).unwrap(), g(I));
        let strict = Presentation::strict();
        assert_eq!(
            normal_form(&Expr::product(&[I, I]), &strict).unwrap(),
            Expr::product(&[I, I])
        );
    }

    #[test]
    fn ladder_ccr_undeformed() {
        let p = Presentation::undeformed().with_basis(Basis::Ladder);
        let nf = normal_form(&Expr::product(&[AMinus(0), APlus(0)]), &p).unwrap();
        assert_eq!(nf, &Expr::product(&[APlus(0), AMinus(0)]) + &g(I));
    }

    #[test]
    fn commutator_examples() {
        let p = Presentation::collapsed();
        assert_eq!(
            commutator(&g(Pi(0)), &g(Phi(0)), &p).unwrap(),
            g(I).scale(&minus_i(Scalar::kappa()))
        );
        assert!(commutator(&g(Phi(0)), &g(Phi(1)), &p).unwrap().is_zero());
        let gram = Gram::matrix(vec![vec![Scalar::from_int(2)]]).unwrap();
        let p2 = Presentation::collapsed().with_gram(gram);
        assert_eq!(
            commutator(&g(Pi(0)), &g(Phi(0)), &p2).unwrap(),
            g(I).scale(&minus_i(&Scalar::from_int(2) * &Scalar::kappa()))
        );
    }

    #[test]
    fn adjoint_examples() {
        assert_eq!(adjoint(&g(APlus(0))), g(AMinus(0)));
        let x = g(Phi(0)).scale(&Scalar::i());
        assert_eq!(adjoint(&x), g(Phi(0)).scale(&-Scalar::i()));
        assert_eq!(
            adjoint(&Expr::product(&[Phi(0), Pi(1)])),
            Expr::product(&[Pi(1), Phi(0)])
        );
    }

    #[test]
    fn basis_convert_examples() {
        let p = Presentation::collapsed();
        let inv_r2 = Scalar::r2().inv().unwrap();
        let a = basis_convert(&g(APlus(0)), Basis::PhiPi, &p).unwrap();
        let expected = (&g(Phi(0)) - &g(Pi(0)).scale(&Scalar::i())).scale(&inv_r2);
        assert_eq!(a, expected);
        let phi = basis_convert(&g(Phi(0)), Basis::Ladder, &p).unwrap();
        assert_eq!(phi, (&g(APlus(0)) + &g(AMinus(0))).scale(&inv_r2));
        // [a-, a+] computed through the phi-pi basis
        let c = commutator(&g(AMinus(0)), &g(APlus(0)), &p).unwrap();
        assert_eq!(c, g(I).scale(&Scalar::kappa()));
    }

    #[test]
    fn expand_k_examples() {
        let p = Presentation::collapsed();
        assert_eq!(expand_k(&Expr::product(&[K, Kinv]), &p).unwrap(), Expr::one());
        let k2 = Expr::product(&[K, K]);
        let ki2 = Expr::product(&[Kinv, Kinv]);
        let s = Scalar::s();
        let width = &(&s * &s) - &s.pow(-2);
        assert_eq!(expand_k(&(&k2 - &ki2), &p).unwrap(), g(I).scale(&width));
        let p1 = Presentation::collapsed().with_numeric(1.0, 2.0).unwrap();
        assert_eq!(expand_k(&g(K), &p1).unwrap(), Expr::one());
        assert!(matches!(
            expand_k(&g(K), &Presentation::strict()),
            Err(AlgebraError::WrongVariant { .. })
        ));
    }

    #[test]
    fn strict_ccr_collapses_to_kappa() {
        let strict = Presentation::strict();
        let c = commutator(&g(Pi(0)), &g(Phi(0)), &strict).unwrap();
        assert!(c.generators().contains(&K));
        let collapsed = expand_k(&c, &Presentation::collapsed()).unwrap();
        assert_eq!(collapsed, g(I).scale(&minus_i(Scalar::kappa())));
    }

    #[test]
    fn k_illegal_in_undeformed() {
        let err = normal_form(&g(K), &Presentation::undeformed()).unwrap_err();
        assert!(matches!(err, AlgebraError::IllegalGenerator { generator: K, .. }));
    }

    #[test]
    fn k_central_group_like_in_strict() {
        let p = Presentation::strict();
        let e = Expr::product(&[Phi(0), Kinv, Pi(1), K]);
        assert_eq!(normal_form(&e, &p).unwrap(), Expr::product(&[Phi(0), Pi(1)]));
    }

    #[test]
    fn schedules_agree_on_a_long_word() {
        let p = Presentation::strict();
        let e = Expr::product(&[Pi(0), Pi(1), Phi(1), K, Phi(0), I, Pi(0), Phi(0)]);
        let a = normal_form_with(&e, &p, Schedule::Leftmost).unwrap();
        let b = normal_form_with(&e, &p, Schedule::Rightmost).unwrap();
        let c = normal_form_with(&e, &p, Schedule::Seeded(9)).unwrap();
        assert_eq!(a, b);
        assert_eq!(a, c);
        assert!(a.terms().all(|(w, _)| w.is_sorted()));
    }
}
