use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::generator::{Generator, Word};
use crate::scalar::Scalar;

/// Finitely supported linear combination of words. No stored coefficient
/// is zero.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Expr {
    terms: BTreeMap<Word, Scalar>,
}

impl Expr {
    pub fn zero() -> Self {
        Expr::default()
    }

    pub fn one() -> Self {
        Expr::word(Word::unit())
    }

    pub fn scalar(c: Scalar) -> Self {
        Expr::term(Word::unit(), c)
    }

    pub fn gen(g: Generator) -> Self {
        Expr::word(Word::single(g))
    }

    pub fn word(w: Word) -> Self {
        Expr::term(w, Scalar::one())
    }

    pub fn term(w: Word, c: Scalar) -> Self {
        let mut e = Expr::zero();
        e.add_term(w, c);
        e
    }

    pub fn from_terms<I: IntoIterator<Item = (Word, Scalar)>>(terms: I) -> Self {
        let mut e = Expr::zero();
        for (w, c) in terms {
            e.add_term(w, c);
        }
        e
    }

    /// Product of generators in the given order.
    pub fn product(gens: &[Generator]) -> Self {
        Expr::word(Word(gens.to_vec()))
    }

    pub fn add_term(&mut self, w: Word, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(existing) => {
                *existing += &c;
                if existing.is_zero() {
                    self.terms.remove(&w);
                }
            }
            None => {
                self.terms.insert(w, c);
            }
        }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, other: &Expr, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        for (w, x) in &other.terms {
            self.add_term(w.clone(), x * c);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, w: &Word) -> Scalar {
        self.terms.get(w).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().map(Word::degree).max().unwrap_or(0)
    }

    pub fn generators(&self) -> BTreeSet<Generator> {
        self.terms
            .keys()
            .flat_map(|w| w.letters().iter().copied())
            .collect()
    }

    /// Coefficient of the unit word if the expression is a pure scalar.
    pub fn as_scalar(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(Scalar::zero()),
            1 => {
                let (w, c) = self.terms.iter().next().unwrap();
                w.is_unit().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn scale(&self, c: &Scalar) -> Expr {
        let mut out = Expr::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn map_coefficients(&self, f: impl Fn(&Scalar) -> Scalar) -> Expr {
        Expr::from_terms(self.terms.iter().map(|(w, c)| (w.clone(), f(c))))
    }

    pub fn pow(&self, n: u32) -> Expr {
        (0..n).fold(Expr::one(), |acc, _| &acc * self)
    }

    /// Algebra homomorphism extending a map on generators; generators the
    /// map leaves alone (`None`) are kept.
    pub fn substitute(&self, f: impl Fn(Generator) -> Option<Expr>) -> Expr {
        let mut out = Expr::zero();
        for (w, c) in &self.terms {
            if w.letters().iter().all(|&g| f(g).is_none()) {
                out.add_term(w.clone(), c.clone());
                continue;
            }
            let mut acc = Expr::scalar(c.clone());
            for &g in w.letters() {
                let image = f(g).unwrap_or_else(|| Expr::gen(g));
                acc = &acc * &image;
            }
            out = &out + &acc;
        }
        out
    }
}

impl From<Generator> for Expr {
    fn from(g: Generator) -> Self {
        Expr::gen(g)
    }
}

impl From<Scalar> for Expr {
    fn from(c: Scalar) -> Self {
        Expr::scalar(c)
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (w, c)) in self.terms.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}*{w}")?;
        }
        Ok(())
    }
}

impl<'a> Add<&'a Expr> for &'a Expr {
    type Output = Expr;
    fn add(self, rhs: &Expr) -> Expr {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a Expr> for &'a Expr {
    type Output = Expr;
    fn sub(self, rhs: &Expr) -> Expr {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), -c);
        }
        out
    }
}

impl<'a> Mul<&'a Expr> for &'a Expr {
    type Output = Expr;
    fn mul(self, rhs: &Expr) -> Expr {
        let mut out = Expr::zero();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &rhs.terms {
                out.add_term(w1.concat(w2), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        self.scale(&Scalar::from_int(-1))
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<Expr> for Expr {
            type Output = Expr;
            fn $m(self, rhs: Expr) -> Expr {
                (&self).$m(&rhs)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);
