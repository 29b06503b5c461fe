//! Bounded-degree exhaustive verification of bialgebra and Hopf axioms.
//!
//! The algebras are infinite-dimensional, so every check runs over the
//! normal words of degree at most `degree` built from a finite window of
//! generators (modes `0..modes`, the unit `I`, and `K`, `Kinv` where they
//! are live generators). Per-word checks are independent and run through
//! [`Execution`].

use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use super::maps::{
    antipode_raw, antipode_word, coproduct_raw, coproduct_with, counit_word, Flavor, HopfSpec,
};
use super::tensor::TensorExpr;
use super::HopfError;
use crate::algebra::{Expr, Generator, Presentation, Reducer, Variant, Word};
use crate::exec::Execution;
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
}

/// Nonzero residual of an axiom, already in normal form.
#[derive(Clone, Debug, PartialEq)]
pub enum Residual {
    Scalar(Scalar),
    Expr(Expr),
    Tensor(TensorExpr),
}

impl fmt::Display for Residual {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Residual::Scalar(s) => write!(f, "{s}"),
            Residual::Expr(e) => write!(f, "{e}"),
            Residual::Tensor(t) => write!(f, "{t}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Counterexample {
    /// Word or relation that exhibits the failure.
    pub witness: String,
    /// Which side or structure map produced the residual.
    pub map: String,
    pub residual: Residual,
}

#[derive(Clone, Debug, PartialEq)]
pub struct AxiomReport {
    pub axiom: String,
    pub flavor: Flavor,
    pub variant: Variant,
    pub modes: u32,
    pub degree: usize,
    pub checked: usize,
    pub status: Status,
    pub counterexamples: Vec<Counterexample>,
    pub notes: Vec<String>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn find(&self, witness: &str, map: &str) -> Option<&Counterexample> {
        self.counterexamples
            .iter()
            .find(|c| c.witness == witness && c.map == map)
    }
}

/// Finite generator window and degree bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckWindow {
    pub modes: u32,
    pub degree: usize,
}

impl Default for CheckWindow {
    fn default() -> Self {
        CheckWindow { modes: 2, degree: 3 }
    }
}

pub struct AxiomChecker<'a> {
    h: HopfSpec,
    p: &'a Presentation,
    window: CheckWindow,
    exec: Execution,
}

type WordCheck = Result<Vec<Counterexample>, HopfError>;

impl<'a> AxiomChecker<'a> {
    pub fn new(h: HopfSpec, p: &'a Presentation) -> Self {
        AxiomChecker {
            h,
            p,
            window: CheckWindow::default(),
            exec: Execution::default(),
        }
    }

    pub fn window(mut self, window: CheckWindow) -> Self {
        self.window = window;
        self
    }

    pub fn degree(mut self, degree: usize) -> Self {
        self.window.degree = degree;
        self
    }

    pub fn modes(mut self, modes: u32) -> Self {
        self.window.modes = modes;
        self
    }

    pub fn execution(mut self, exec: Execution) -> Self {
        self.exec = exec;
        self
    }

    /// Live generators of the window that the Hopf structure covers.
    pub fn generators(&self) -> Vec<Generator> {
        let mut gens = vec![Generator::I];
        let k_live =
            self.p.variant() == Variant::DeformedStrict && self.p.k_substitution(Generator::K).is_none();
        if k_live && self.h.covers(Generator::K) {
            gens.push(Generator::K);
            gens.push(Generator::Kinv);
        }
        gens.extend(Generator::modes(self.p.basis(), self.window.modes));
        gens.sort();
        gens
    }

    /// Normal words of degree `0..=degree` over the window.
    pub fn normal_words(&self) -> Vec<Word> {
        let gens = self.generators();
        let idempotent = self.p.idempotent_unit();
        let mut out = Vec::new();
        for deg in 0..=self.window.degree {
            for combo in gens.iter().copied().combinations_with_replacement(deg) {
                let n_i = combo.iter().filter(|&&g| g == Generator::I).count();
                if idempotent && n_i > 1 {
                    continue;
                }
                if combo.contains(&Generator::K) && combo.contains(&Generator::Kinv) {
                    continue;
                }
                out.push(Word(combo));
            }
        }
        out
    }

    fn report(&self, axiom: &str, checked: usize, results: Vec<WordCheck>) -> Result<AxiomReport, HopfError> {
        let mut counterexamples = Vec::new();
        for r in results {
            counterexamples.extend(r?);
        }
        let status = if counterexamples.is_empty() {
            Status::Pass
        } else {
            Status::Fail
        };
        Ok(AxiomReport {
            axiom: axiom.to_string(),
            flavor: self.h.flavor,
            variant: self.p.variant(),
            modes: self.window.modes,
            degree: self.window.degree,
            checked,
            status,
            counterexamples,
            notes: self.h.completion_notes(),
        })
    }

    fn per_word<F>(&self, axiom: &str, f: F) -> Result<AxiomReport, HopfError>
    where
        F: Fn(&Word, &Reducer<'_>) -> WordCheck + Sync + Send,
    {
        let words = self.normal_words();
        let p = self.p;
        let results = self.exec.map(&words, |w| {
            let reducer = Reducer::new(p);
            f(w, &reducer)
        });
        self.report(axiom, words.len(), results)
    }

    /// `(Δ⊗id)Δ(w) = (id⊗Δ)Δ(w)`.
    pub fn coassociativity(&self) -> Result<AxiomReport, HopfError> {
        let h = self.h;
        self.per_word("coassociativity", move |w, r| {
            let delta = coproduct_with(&Expr::word(w.clone()), &h, r)?;
            let left = delta.expand_slot(0, |x| coproduct_with(&Expr::word(x.clone()), &h, r))?;
            let right = delta.expand_slot(1, |x| coproduct_with(&Expr::word(x.clone()), &h, r))?;
            let residual = (&left - &right).normal_form(r)?;
            Ok(tensor_counterexample(w, "(Δ⊗id)Δ - (id⊗Δ)Δ", residual))
        })
    }

    /// `(ε⊗id)Δ(w) = w = (id⊗ε)Δ(w)`.
    pub fn counit(&self) -> Result<AxiomReport, HopfError> {
        let h = self.h;
        self.per_word("counit", move |w, r| {
            let target = r.reduce(&Expr::word(w.clone()))?;
            let delta = coproduct_with(&Expr::word(w.clone()), &h, r)?;
            let mut out = Vec::new();
            for (side, label) in [(0usize, "(ε⊗id)Δ - id"), (1, "(id⊗ε)Δ - id")] {
                let mut acc = Expr::zero();
                for (slots, c) in delta.terms() {
                    let e = counit_word(&slots[side], &h)?;
                    acc.add_term(slots[1 - side].clone(), c * &e);
                }
                let residual = &r.reduce(&acc)? - &target;
                out.extend(expr_counterexample(w, label, residual));
            }
            Ok(out)
        })
    }

    /// `m(S⊗id)Δ(w) = ε(w) 1 = m(id⊗S)Δ(w)`.
    pub fn antipode(&self) -> Result<AxiomReport, HopfError> {
        let h = self.h;
        self.per_word("antipode", move |w, r| {
            let eps = counit_word(w, &h)?;
            let delta = coproduct_with(&Expr::word(w.clone()), &h, r)?;
            let mut left = Expr::zero();
            let mut right = Expr::zero();
            for (slots, c) in delta.terms() {
                let l = &antipode_word(&slots[0], &h)? * &Expr::word(slots[1].clone());
                let rr = &Expr::word(slots[0].clone()) * &antipode_word(&slots[1], &h)?;
                left.add_scaled(&l, c);
                right.add_scaled(&rr, c);
            }
            let unit = Expr::scalar(eps);
            let mut out = expr_counterexample(w, "m(S⊗id)Δ - ε", &r.reduce(&left)? - &unit);
            out.extend(expr_counterexample(w, "m(id⊗S)Δ - ε", &r.reduce(&right)? - &unit));
            Ok(out)
        })
    }

    /// `Δ(w) = τΔ(w)`; the residual is `Δ - τΔ`.
    pub fn cocommutativity(&self) -> Result<AxiomReport, HopfError> {
        let h = self.h;
        self.per_word("cocommutativity", move |w, r| {
            let delta = coproduct_with(&Expr::word(w.clone()), &h, r)?;
            let residual = (&delta - &delta.flip()).normal_form(r)?;
            Ok(tensor_counterexample(w, "Δ - τΔ", residual))
        })
    }

    /// `Δ(xy) = Δ(x)Δ(y)` with `xy` reduced first, for nonempty normal
    /// words with `deg x + deg y <= degree`. This is where Δ being well
    /// defined on the quotient is actually tested.
    pub fn multiplicativity(&self) -> Result<AxiomReport, HopfError> {
        let words: Vec<Word> = self
            .normal_words()
            .into_iter()
            .filter(|w| !w.is_unit())
            .collect();
        let pairs: Vec<(Word, Word)> = words
            .iter()
            .cartesian_product(words.iter())
            .filter(|(x, y)| x.degree() + y.degree() <= self.window.degree)
            .map(|(x, y)| (x.clone(), y.clone()))
            .collect();
        let (h, p) = (self.h, self.p);
        let results = self.exec.map(&pairs, |(x, y)| {
            let r = Reducer::new(p);
            let xy = r.reduce(&Expr::word(x.concat(y)))?;
            let lhs = coproduct_with(&xy, &h, &r)?;
            let dx = coproduct_with(&Expr::word(x.clone()), &h, &r)?;
            let dy = coproduct_with(&Expr::word(y.clone()), &h, &r)?;
            let residual = (&lhs - &(&dx * &dy)).normal_form(&r)?;
            let witness = format!("({x})*({y})");
            Ok(if residual.is_zero() {
                Vec::new()
            } else {
                vec![Counterexample {
                    witness,
                    map: "Δ(xy) - Δ(x)Δ(y)".to_string(),
                    residual: Residual::Tensor(residual),
                }]
            })
        });
        self.report("multiplicativity", pairs.len(), results)
    }

    /// For every defining relation `L = R` on window generators, compares
    /// Δ, ε and S on both sides.
    pub fn respects_relations(&self) -> Result<AxiomReport, HopfError> {
        let relations = defining_relations(self.p, &self.generators());
        let (h, p) = (self.h, self.p);
        let results = self.exec.map(&relations, |(label, lhs, rhs)| {
            let r = Reducer::new(p);
            let diff = lhs - rhs;
            let mut out = Vec::new();
            let d = coproduct_raw(&diff, &h)?.normal_form(&r)?;
            if !d.is_zero() {
                out.push(Counterexample {
                    witness: label.clone(),
                    map: "Δ".to_string(),
                    residual: Residual::Tensor(d),
                });
            }
            let e = super::maps::counit(&diff, &h)?;
            if !e.is_zero() {
                out.push(Counterexample {
                    witness: label.clone(),
                    map: "ε".to_string(),
                    residual: Residual::Scalar(e),
                });
            }
            let s = r.reduce(&antipode_raw(&diff, &h)?)?;
            if !s.is_zero() {
                out.push(Counterexample {
                    witness: label.clone(),
                    map: "S".to_string(),
                    residual: Residual::Expr(s),
                });
            }
            Ok(out)
        });
        let mut report = self.report("respects-relations", relations.len(), results)?;
        if report.find("I*I", "Δ").is_some() {
            report.notes.push(
                "primitive coproduct of I is incompatible with the relation I*I = I".to_string(),
            );
        }
        Ok(report)
    }
}

fn tensor_counterexample(w: &Word, map: &str, residual: TensorExpr) -> Vec<Counterexample> {
    if residual.is_zero() {
        Vec::new()
    } else {
        vec![Counterexample {
            witness: w.to_string(),
            map: map.to_string(),
            residual: Residual::Tensor(residual),
        }]
    }
}

fn expr_counterexample(w: &Word, map: &str, residual: Expr) -> Vec<Counterexample> {
    if residual.is_zero() {
        Vec::new()
    } else {
        vec![Counterexample {
            witness: w.to_string(),
            map: map.to_string(),
            residual: Residual::Expr(residual),
        }]
    }
}

/// Every reducible product of two window generators, paired with the
/// single rewrite step that defines it.
pub fn defining_relations(p: &Presentation, gens: &[Generator]) -> Vec<(String, Expr, Expr)> {
    let reducer = Reducer::new(p);
    let mut out = Vec::new();
    for &x in gens {
        for &y in gens {
            let w = Word(vec![x, y]);
            let lhs = Expr::word(w.clone());
            let rhs = reducer.reduce_one_step(&w);
            if let Some(rhs) = rhs {
                out.push((w.to_string(), lhs, rhs));
            }
        }
    }
    out
}

/// Convenience wrappers with the default window (2 modes).
pub fn check_respects_relations(h: &HopfSpec, p: &Presentation) -> Result<AxiomReport, HopfError> {
    AxiomChecker::new(*h, p).respects_relations()
}

pub fn check_coassociativity(h: &HopfSpec, p: &Presentation, degree: usize) -> Result<AxiomReport, HopfError> {
    AxiomChecker::new(*h, p).degree(degree).coassociativity()
}

pub fn check_counit(h: &HopfSpec, p: &Presentation, degree: usize) -> Result<AxiomReport, HopfError> {
    AxiomChecker::new(*h, p).degree(degree).counit()
}

pub fn check_antipode(h: &HopfSpec, p: &Presentation, degree: usize) -> Result<AxiomReport, HopfError> {
    AxiomChecker::new(*h, p).degree(degree).antipode()
}

pub fn cocommutativity_probe(h: &HopfSpec, p: &Presentation, degree: usize) -> Result<AxiomReport, HopfError> {
    AxiomChecker::new(*h, p).degree(degree).cocommutativity()
}

pub fn check_multiplicativity(h: &HopfSpec, p: &Presentation, degree: usize) -> Result<AxiomReport, HopfError> {
    AxiomChecker::new(*h, p).degree(degree).multiplicativity()
}
