use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use super::MeasureError;

/// `(v1, v2, lambda)` with `lambda = exp(i theta)`. Vectors and the phase
/// angle are exact rationals, so composition is exact.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeylElement {
    pub v1: Vec<BigRational>,
    pub v2: Vec<BigRational>,
    pub theta: BigRational,
}

impl WeylElement {
    pub fn identity(d: usize) -> Self {
        WeylElement {
            v1: vec![BigRational::zero(); d],
            v2: vec![BigRational::zero(); d],
            theta: BigRational::zero(),
        }
    }

    /// `T(v) = (v, 0, 1)`.
    pub fn t(v: Vec<BigRational>) -> Self {
        let d = v.len();
        WeylElement {
            v1: v,
            v2: vec![BigRational::zero(); d],
            theta: BigRational::zero(),
        }
    }

    /// `P(v) = (0, v, 1)`.
    pub fn p(v: Vec<BigRational>) -> Self {
        let d = v.len();
        WeylElement {
            v1: vec![BigRational::zero(); d],
            v2: v,
            theta: BigRational::zero(),
        }
    }

    pub fn d(&self) -> usize {
        self.v1.len()
    }

    pub fn lambda(&self) -> Complex64 {
        Complex64::new(0.0, self.theta.to_f64().unwrap_or(f64::NAN)).exp()
    }
}

/// Exact real Gram form for the phase `<v2|v1'>`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalGram(Vec<Vec<BigRational>>);

impl RationalGram {
    pub fn identity(d: usize) -> Self {
        RationalGram(
            (0..d)
                .map(|j| {
                    (0..d)
                        .map(|k| if j == k { BigRational::from_integer(BigInt::from(1)) } else { BigRational::zero() })
                        .collect()
                })
                .collect(),
        )
    }

    pub fn new(rows: Vec<Vec<BigRational>>) -> Result<Self, MeasureError> {
        let d = rows.len();
        if rows.iter().any(|r| r.len() != d) {
            return Err(MeasureError::Shape("gram must be square".into()));
        }
        for j in 0..d {
            for k in 0..j {
                if rows[j][k] != rows[k][j] {
                    return Err(MeasureError::InvalidArgument(format!("gram not symmetric at ({j}, {k})")));
                }
            }
        }
        Ok(RationalGram(rows))
    }

    pub fn d(&self) -> usize {
        self.0.len()
    }

    pub fn inner(&self, v: &[BigRational], w: &[BigRational]) -> BigRational {
        let mut acc = BigRational::zero();
        for (j, vj) in v.iter().enumerate() {
            for (k, wk) in w.iter().enumerate() {
                acc += vj * &self.0[j][k] * wk;
            }
        }
        acc
    }
}

/// `(v1,v2,l)(v1',v2',l') = (v1+v1', v2+v2', exp(i<v2|v1'>) l l')`.
pub fn weyl_compose(g: &WeylElement, h: &WeylElement, gram: &RationalGram) -> Result<WeylElement, MeasureError> {
    let d = gram.d();
    if g.d() != d || h.d() != d || g.v2.len() != d || h.v2.len() != d {
        return Err(MeasureError::Shape(format!("Weyl elements must live in dimension {d}")));
    }
    let add = |a: &[BigRational], b: &[BigRational]| a.iter().zip(b).map(|(x, y)| x + y).collect();
    Ok(WeylElement {
        v1: add(&g.v1, &h.v1),
        v2: add(&g.v2, &h.v2),
        theta: &g.theta + &h.theta + gram.inner(&g.v2, &h.v1),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn element() -> impl Strategy<Value = WeylElement> {
        (prop::collection::vec((-50i64..50, 1i64..12), 6), -20i64..20).prop_map(|(xs, t)| {
            let v: Vec<BigRational> = xs.iter().map(|&(n, d)| q(n, d)).collect();
            WeylElement {
                v1: v[..3].to_vec(),
                v2: v[3..].to_vec(),
                theta: q(t, 7),
            }
        })
    }

    #[test]
    fn translations_form_a_subgroup() {
        let gram = RationalGram::identity(2);
        let a = WeylElement::t(vec![q(1, 2), q(-3, 1)]);
        let b = WeylElement::t(vec![q(1, 3), q(2, 5)]);
        let ab = weyl_compose(&a, &b, &gram).unwrap();
        assert_eq!(ab, WeylElement::t(vec![q(5, 6), q(-13, 5)]));
    }

    #[test]
    fn weyl_relation_in_the_group() {
        // P(v)T(v') = exp(i<v|v'>) T(v')P(v)
        let gram = RationalGram::identity(2);
        let v = vec![q(1, 2), q(2, 3)];
        let w = vec![q(-1, 4), q(3, 1)];
        let pt = weyl_compose(&WeylElement::p(v.clone()), &WeylElement::t(w.clone()), &gram).unwrap();
        let tp = weyl_compose(&WeylElement::t(w.clone()), &WeylElement::p(v.clone()), &gram).unwrap();
        assert_eq!(pt.v1, tp.v1);
        assert_eq!(pt.v2, tp.v2);
        assert_eq!(&pt.theta - &tp.theta, gram.inner(&v, &w));
    }

    proptest! {
        #[test]
        fn associative_and_unital(a in element(), b in element(), c in element()) {
            let gram = RationalGram::identity(3);
            let left = weyl_compose(&weyl_compose(&a, &b, &gram).unwrap(), &c, &gram).unwrap();
            let right = weyl_compose(&a, &weyl_compose(&b, &c, &gram).unwrap(), &gram).unwrap();
            prop_assert_eq!(left, right);
            let e = WeylElement::identity(3);
            prop_assert_eq!(weyl_compose(&e, &a, &gram).unwrap(), a.clone());
            prop_assert_eq!(weyl_compose(&a, &e, &gram).unwrap(), a);
        }
    }
}
