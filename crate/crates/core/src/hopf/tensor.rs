use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Sub};

use crate::algebra::{AlgebraError, Expr, Reducer, Word};
use crate::scalar::Scalar;

/// Element of a tensor power of the algebra (order 2 or 3 in practice).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorExpr {
    order: usize,
    terms: BTreeMap<Vec<Word>, Scalar>,
}

impl TensorExpr {
    pub fn zero(order: usize) -> Self {
        TensorExpr {
            order,
            terms: BTreeMap::new(),
        }
    }

    /// `1 ⊗ ... ⊗ 1`.
    pub fn unit(order: usize) -> Self {
        TensorExpr::pure(vec![Word::unit(); order], Scalar::one())
    }

    pub fn pure(slots: Vec<Word>, c: Scalar) -> Self {
        let mut t = TensorExpr::zero(slots.len());
        t.add_term(slots, c);
        t
    }

    /// `x_1 ⊗ x_2 ⊗ ...` expanded bilinearly.
    pub fn tensor(factors: &[&Expr]) -> Self {
        let mut acc = TensorExpr::unit(0);
        for f in factors {
            let mut next = TensorExpr::zero(acc.order + 1);
            for (slots, c) in &acc.terms {
                for (w, x) in f.terms() {
                    let mut s = slots.clone();
                    s.push(w.clone());
                    next.add_term(s, c * x);
                }
            }
            acc = next;
        }
        acc
    }

    pub fn order(&self) -> usize {
        self.order
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

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Word>, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, slots: &[Word]) -> Scalar {
        self.terms.get(slots).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn add_term(&mut self, slots: Vec<Word>, c: Scalar) {
        assert_eq!(slots.len(), self.order, "tensor order mismatch");
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&slots) {
            Some(existing) => {
                *existing += &c;
                if existing.is_zero() {
                    self.terms.remove(&slots);
                }
            }
            None => {
                self.terms.insert(slots, c);
            }
        }
    }

    pub fn add_scaled(&mut self, other: &TensorExpr, c: &Scalar) {
        assert_eq!(self.order, other.order, "tensor order mismatch");
        for (s, x) in &other.terms {
            self.add_term(s.clone(), x * c);
        }
    }

    pub fn scale(&self, c: &Scalar) -> TensorExpr {
        let mut out = TensorExpr::zero(self.order);
        out.add_scaled(self, c);
        out
    }

    /// Slot swap of a 2-tensor.
    pub fn flip(&self) -> TensorExpr {
        assert_eq!(self.order, 2, "flip needs a 2-tensor");
        let mut out = TensorExpr::zero(2);
        for (s, c) in &self.terms {
            out.add_term(vec![s[1].clone(), s[0].clone()], c.clone());
        }
        out
    }

    /// Per-slot normal form with bilinear recombination.
    pub fn normal_form(&self, reducer: &Reducer<'_>) -> Result<TensorExpr, AlgebraError> {
        let mut cache: BTreeMap<Word, Expr> = BTreeMap::new();
        let mut out = TensorExpr::zero(self.order);
        for (slots, c) in &self.terms {
            let mut reduced = Vec::with_capacity(slots.len());
            for w in slots {
                let nf = match cache.get(w) {
                    Some(nf) => nf.clone(),
                    None => {
                        let nf = reducer.reduce(&Expr::word(w.clone()))?;
                        cache.insert(w.clone(), nf.clone());
                        nf
                    }
                };
                reduced.push(nf);
            }
            let refs: Vec<&Expr> = reduced.iter().collect();
            out.add_scaled(&TensorExpr::tensor(&refs), c);
        }
        Ok(out)
    }

    /// Applies a linear map slot-wise: each term's slot `k` is replaced by
    /// the image of its word, which may be a tensor of any order.
    pub fn expand_slot<F, E>(&self, k: usize, f: F) -> Result<TensorExpr, E>
    where
        F: Fn(&Word) -> Result<TensorExpr, E>,
    {
        let mut out: Option<TensorExpr> = None;
        for (slots, c) in &self.terms {
            let image = f(&slots[k])?;
            let order = self.order - 1 + image.order;
            let acc = out.get_or_insert_with(|| TensorExpr::zero(order));
            for (img, x) in &image.terms {
                let mut s = Vec::with_capacity(order);
                s.extend_from_slice(&slots[..k]);
                s.extend(img.iter().cloned());
                s.extend_from_slice(&slots[k + 1..]);
                acc.add_term(s, c * x);
            }
        }
        Ok(out.unwrap_or_else(|| TensorExpr::zero(self.order + 1)))
    }
}

impl fmt::Display for TensorExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (slots, c)) in self.terms.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}*(")?;
            for (k, w) in slots.iter().enumerate() {
                if k > 0 {
                    write!(f, " ⊗ ")?;
                }
                write!(f, "{w}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl<'a> Add<&'a TensorExpr> for &'a TensorExpr {
    type Output = TensorExpr;
    fn add(self, rhs: &TensorExpr) -> TensorExpr {
        let mut out = self.clone();
        out.add_scaled(rhs, &Scalar::one());
        out
    }
}

impl<'a> Sub<&'a TensorExpr> for &'a TensorExpr {
    type Output = TensorExpr;
    fn sub(self, rhs: &TensorExpr) -> TensorExpr {
        let mut out = self.clone();
        out.add_scaled(rhs, &Scalar::from_int(-1));
        out
    }
}

/// Componentwise product `(x1 ⊗ x2)(y1 ⊗ y2) = x1 y1 ⊗ x2 y2`.
impl<'a> Mul<&'a TensorExpr> for &'a TensorExpr {
    type Output = TensorExpr;
    fn mul(self, rhs: &TensorExpr) -> TensorExpr {
        assert_eq!(self.order, rhs.order, "tensor order mismatch");
        let mut out = TensorExpr::zero(self.order);
        for (s1, c1) in &self.terms {
            for (s2, c2) in &rhs.terms {
                let slots = s1.iter().zip(s2).map(|(a, b)| a.concat(b)).collect();
                out.add_term(slots, c1 * c2);
            }
        }
        out
    }
}
