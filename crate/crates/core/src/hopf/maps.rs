use serde::{Deserialize, Serialize};

use super::tensor::TensorExpr;
use super::HopfError;
use crate::algebra::{Expr, Generator, Presentation, Reducer, Word};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Flavor {
    /// Primitive generators: `Δ(w) = w⊗1 + 1⊗w`, `ε(w) = 0`, `S(w) = -w`.
    Classical,
    /// `K`-twisted mode generators, group-like `K`, `Kinv`, primitive `I`.
    Deformed,
}

/// Coproduct, counit and antipode on generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HopfSpec {
    pub flavor: Flavor,
}

impl HopfSpec {
    pub fn classical() -> Self {
        HopfSpec {
            flavor: Flavor::Classical,
        }
    }

    pub fn deformed() -> Self {
        HopfSpec {
            flavor: Flavor::Deformed,
        }
    }

    pub fn covers(&self, g: Generator) -> bool {
        match g {
            Generator::K | Generator::Kinv => self.flavor == Flavor::Deformed,
            _ => true,
        }
    }

    fn uncovered(&self, g: Generator) -> HopfError {
        HopfError::Uncovered {
            generator: g,
            flavor: self.flavor,
        }
    }

    pub fn coproduct_gen(&self, g: Generator) -> Result<TensorExpr, HopfError> {
        let w = Word::single(g);
        let one = Word::unit();
        let primitive = || {
            let mut t = TensorExpr::pure(vec![w.clone(), one.clone()], Scalar::one());
            t.add_term(vec![one.clone(), w.clone()], Scalar::one());
            t
        };
        match (self.flavor, g) {
            (_, Generator::I) | (Flavor::Classical, _) if self.covers(g) => Ok(primitive()),
            (Flavor::Classical, _) => Err(self.uncovered(g)),
            (Flavor::Deformed, Generator::K | Generator::Kinv) => {
                Ok(TensorExpr::pure(vec![w.clone(), w], Scalar::one()))
            }
            (Flavor::Deformed, _) => {
                let mut t =
                    TensorExpr::pure(vec![w.clone(), Word::single(Generator::K)], Scalar::one());
                t.add_term(vec![Word::single(Generator::Kinv), w], Scalar::one());
                Ok(t)
            }
        }
    }

    pub fn counit_gen(&self, g: Generator) -> Result<Scalar, HopfError> {
        match g {
            Generator::K | Generator::Kinv if self.covers(g) => Ok(Scalar::one()),
            _ if self.covers(g) => Ok(Scalar::zero()),
            _ => Err(self.uncovered(g)),
        }
    }

    pub fn antipode_gen(&self, g: Generator) -> Result<Expr, HopfError> {
        match g {
            Generator::K if self.covers(g) => Ok(Expr::gen(Generator::Kinv)),
            Generator::Kinv if self.covers(g) => Ok(Expr::gen(Generator::K)),
            _ if self.covers(g) => Ok(Expr::gen(g).scale(&Scalar::from_int(-1))),
            _ => Err(self.uncovered(g)),
        }
    }

    /// Structure-map values that are chosen here rather than given by the
    /// defining data, and therefore verified rather than assumed.
    pub fn completion_notes(&self) -> Vec<String> {
        match self.flavor {
            Flavor::Classical => Vec::new(),
            Flavor::Deformed => vec![
                "counit ε(K) = ε(Kinv) = 1 and ε(I) = 0 are completions".to_string(),
                "antipode S(phi) = -phi, S(pi) = -pi, S(K) = Kinv, S(Kinv) = K are completions"
                    .to_string(),
            ],
        }
    }
}

/// Multiplicative extension of Δ on one word, without reduction.
pub(crate) fn coproduct_word(w: &Word, h: &HopfSpec) -> Result<TensorExpr, HopfError> {
    let mut acc = TensorExpr::unit(2);
    for &g in w.letters() {
        acc = &acc * &h.coproduct_gen(g)?;
    }
    Ok(acc)
}

pub(crate) fn coproduct_raw(e: &Expr, h: &HopfSpec) -> Result<TensorExpr, HopfError> {
    let mut out = TensorExpr::zero(2);
    for (w, c) in e.terms() {
        out.add_scaled(&coproduct_word(w, h)?, c);
    }
    Ok(out)
}

/// Δ(e) in tensor normal form.
pub fn coproduct(e: &Expr, h: &HopfSpec, p: &Presentation) -> Result<TensorExpr, HopfError> {
    let reducer = Reducer::new(p);
    coproduct_with(e, h, &reducer)
}

pub(crate) fn coproduct_with(
    e: &Expr,
    h: &HopfSpec,
    reducer: &Reducer<'_>,
) -> Result<TensorExpr, HopfError> {
    Ok(coproduct_raw(e, h)?.normal_form(reducer)?)
}

pub(crate) fn counit_word(w: &Word, h: &HopfSpec) -> Result<Scalar, HopfError> {
    let mut acc = Scalar::one();
    for &g in w.letters() {
        acc = &acc * &h.counit_gen(g)?;
    }
    Ok(acc)
}

/// ε(e); ε(1) = 1.
pub fn counit(e: &Expr, h: &HopfSpec) -> Result<Scalar, HopfError> {
    let mut acc = Scalar::zero();
    for (w, c) in e.terms() {
        acc = &acc + &(c * &counit_word(w, h)?);
    }
    Ok(acc)
}

pub(crate) fn antipode_word(w: &Word, h: &HopfSpec) -> Result<Expr, HopfError> {
    let mut acc = Expr::one();
    for &g in w.letters().iter().rev() {
        acc = &acc * &h.antipode_gen(g)?;
    }
    Ok(acc)
}

pub(crate) fn antipode_raw(e: &Expr, h: &HopfSpec) -> Result<Expr, HopfError> {
    let mut out = Expr::zero();
    for (w, c) in e.terms() {
        out.add_scaled(&antipode_word(w, h)?, c);
    }
    Ok(out)
}

/// S(e), extended anti-multiplicatively, in normal form.
pub fn antipode(e: &Expr, h: &HopfSpec, p: &Presentation) -> Result<Expr, HopfError> {
    Ok(Reducer::new(p).reduce(&antipode_raw(e, h)?)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Generator::*;

    fn w(gs: &[Generator]) -> Word {
        Word(gs.to_vec())
    }

    #[test]
    fn classical_coproduct_is_primitive() {
        let p = Presentation::undeformed();
        let d = coproduct(&Expr::gen(Phi(0)), &HopfSpec::classical(), &p).unwrap();
        let mut expected = TensorExpr::pure(vec![w(&[Phi(0)]), Word::unit()], Scalar::one());
        expected.add_term(vec![Word::unit(), w(&[Phi(0)])], Scalar::one());
        assert_eq!(d, expected);
        let unit = coproduct(&Expr::one(), &HopfSpec::classical(), &p).unwrap();
        assert_eq!(unit, TensorExpr::unit(2));
    }

    #[test]
    fn deformed_coproduct() {
        let p = Presentation::strict();
        let d = coproduct(&Expr::gen(Phi(0)), &HopfSpec::deformed(), &p).unwrap();
        let mut expected = TensorExpr::pure(vec![w(&[Phi(0)]), w(&[K])], Scalar::one());
        expected.add_term(vec![w(&[Kinv]), w(&[Phi(0)])], Scalar::one());
        assert_eq!(d, expected);
    }

    #[test]
    fn deformed_coproduct_of_product() {
        // (φ⊗K + Kinv⊗φ)(π⊗K + Kinv⊗π); central K, Kinv sort to the left
        let p = Presentation::strict();
        let e = Expr::product(&[Phi(0), Pi(0)]);
        let d = coproduct(&e, &HopfSpec::deformed(), &p).unwrap();
        let mut expected = TensorExpr::zero(2);
        expected.add_term(vec![w(&[Phi(0), Pi(0)]), w(&[K, K])], Scalar::one());
        expected.add_term(vec![w(&[Kinv, Phi(0)]), w(&[K, Pi(0)])], Scalar::one());
        expected.add_term(vec![w(&[Kinv, Pi(0)]), w(&[K, Phi(0)])], Scalar::one());
        expected.add_term(vec![w(&[Kinv, Kinv]), w(&[Phi(0), Pi(0)])], Scalar::one());
        assert_eq!(d, expected);
    }

    #[test]
    fn classical_rejects_k() {
        let p = Presentation::strict();
        let err = coproduct(&Expr::gen(K), &HopfSpec::classical(), &p).unwrap_err();
        assert!(matches!(err, HopfError::Uncovered { generator: K, .. }));
    }

    #[test]
    fn counit_examples() {
        let h = HopfSpec::classical();
        assert_eq!(counit(&Expr::gen(Phi(0)), &h).unwrap(), Scalar::zero());
        assert_eq!(counit(&Expr::one(), &h).unwrap(), Scalar::one());
        let e = &Expr::product(&[Phi(0), Pi(1)]) + &Expr::scalar(Scalar::from_int(3));
        assert_eq!(counit(&e, &h).unwrap(), Scalar::from_int(3));
        assert_eq!(counit(&Expr::gen(K), &HopfSpec::deformed()).unwrap(), Scalar::one());
    }

    #[test]
    fn antipode_examples() {
        let p = Presentation::strict();
        let h = HopfSpec::classical();
        assert_eq!(
            antipode(&Expr::gen(Phi(0)), &h, &p).unwrap(),
            Expr::gen(Phi(0)).scale(&Scalar::from_int(-1))
        );
        // S(φ0 π1) = S(π1) S(φ0) = π1 φ0, which normal-orders to φ0 π1
        assert_eq!(
            antipode(&Expr::product(&[Phi(0), Pi(1)]), &h, &p).unwrap(),
            Expr::product(&[Phi(0), Pi(1)])
        );
        assert_eq!(
            antipode(&Expr::gen(K), &HopfSpec::deformed(), &p).unwrap(),
            Expr::gen(Kinv)
        );
    }
}
