use std::collections::BTreeMap;

use num_complex::Complex64;

use super::expr::Expr;
use super::generator::Word;
use crate::scalar::ScalarError;

/// Expression with complex floating coefficients.
pub type NumExpr = BTreeMap<Word, Complex64>;

/// Coefficient-wise evaluation; words are kept, exact zeros are dropped.
pub fn evaluate_numeric(
    e: &Expr,
    assignment: &BTreeMap<String, f64>,
) -> Result<NumExpr, ScalarError> {
    let mut out = NumExpr::new();
    for (w, c) in e.terms() {
        let v = c.eval(assignment)?;
        if v != Complex64::new(0.0, 0.0) {
            out.insert(w.clone(), v);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::deformation::deformation_constant;
    use crate::algebra::generator::Generator::*;
    use crate::scalar::Scalar;

    fn env(pairs: &[(&str, f64)]) -> BTreeMap<String, f64> {
        pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
    }

    #[test]
    fn kappa_times_unit() {
        let kappa = deformation_constant(2.0, 2.0).unwrap();
        let e = Expr::gen(I).scale(&Scalar::kappa());
        let n = evaluate_numeric(&e, &env(&[("kappa", kappa)])).unwrap();
        assert_eq!(n[&Word::single(I)], Complex64::new(1.25, 0.0));
    }

    #[test]
    fn vanishing_coefficient_is_dropped() {
        let s = Scalar::s();
        let e = Expr::gen(Phi(0)).scale(&(&s - &s.inv().unwrap()));
        assert!(evaluate_numeric(&e, &env(&[("s", 1.0)])).unwrap().is_empty());
    }

    #[test]
    fn parameter_free_input() {
        let e = Expr::gen(Pi(0)).scale(&Scalar::i());
        let n = evaluate_numeric(&e, &BTreeMap::new()).unwrap();
        assert_eq!(n[&Word::single(Pi(0))], Complex64::new(0.0, 1.0));
        assert!(evaluate_numeric(&Expr::scalar(Scalar::kappa()), &BTreeMap::new()).is_err());
    }
}
