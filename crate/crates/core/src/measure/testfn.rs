use std::collections::BTreeMap;

use nalgebra::DMatrix;
use num_complex::Complex64;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// `p(u) exp(u^T A u + b.u + c)` on `R^d`: a complex polynomial times a
/// Gaussian profile. Translations, linear phases, multiplication by linear
/// forms and directional derivatives stay inside the class and are exact.
#[derive(Clone, Debug, PartialEq)]
pub struct TestFunction {
    /// Exponent vector to coefficient.
    poly: BTreeMap<Vec<u32>, Complex64>,
    a: DMatrix<f64>,
    b: Vec<Complex64>,
    c: Complex64,
}

fn c64(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

impl TestFunction {
    /// `A` is symmetrized.
    pub fn new(poly: BTreeMap<Vec<u32>, Complex64>, a: DMatrix<f64>, b: Vec<Complex64>, c: Complex64) -> Self {
        let d = b.len();
        assert_eq!((a.nrows(), a.ncols()), (d, d), "profile shape");
        assert!(poly.keys().all(|e| e.len() == d), "monomial arity");
        let a = (&a + a.transpose()) * 0.5;
        let mut f = TestFunction { poly, a, b, c };
        f.prune();
        f
    }

    /// The constant function 1.
    pub fn one(d: usize) -> Self {
        TestFunction::new(
            BTreeMap::from([(vec![0; d], c64(1.0))]),
            DMatrix::zeros(d, d),
            vec![ZERO; d],
            ZERO,
        )
    }

    pub fn d(&self) -> usize {
        self.b.len()
    }

    fn prune(&mut self) {
        self.poly.retain(|_, x| *x != ZERO);
    }

    fn same_profile(&self, poly: BTreeMap<Vec<u32>, Complex64>) -> TestFunction {
        let mut f = TestFunction {
            poly,
            a: self.a.clone(),
            b: self.b.clone(),
            c: self.c,
        };
        f.prune();
        f
    }

    pub fn eval(&self, u: &[f64]) -> Complex64 {
        let d = self.d();
        let mut quad = 0.0;
        for i in 0..d {
            for j in 0..d {
                quad += u[i] * self.a[(i, j)] * u[j];
            }
        }
        let lin: Complex64 = self.b.iter().zip(u).map(|(b, x)| b * x).sum();
        let p: Complex64 = self
            .poly
            .iter()
            .map(|(e, x)| x * e.iter().zip(u).map(|(&k, &t)| t.powi(k as i32)).product::<f64>())
            .sum();
        p * (c64(quad) + lin + self.c).exp()
    }

    pub fn scale(&self, s: Complex64) -> TestFunction {
        self.same_profile(self.poly.iter().map(|(e, x)| (e.clone(), x * s)).collect())
    }

    /// Sum of two functions with the same Gaussian profile.
    pub fn add(&self, other: &TestFunction) -> Option<TestFunction> {
        if self.a != other.a || self.b != other.b || self.c != other.c {
            return None;
        }
        let mut poly = self.poly.clone();
        for (e, x) in &other.poly {
            *poly.entry(e.clone()).or_insert(ZERO) += x;
        }
        Some(self.same_profile(poly))
    }

    /// `f(u) exp(k.u + c0)` for complex `k`, `c0`.
    pub fn mul_exp_linear(&self, k: &[Complex64], c0: Complex64) -> TestFunction {
        let mut f = self.clone();
        f.b.iter_mut().zip(k).for_each(|(b, x)| *b += x);
        f.c += c0;
        f
    }

    /// `f(u) <v,u>`.
    pub fn mul_linear(&self, v: &[f64]) -> TestFunction {
        let mut poly = BTreeMap::new();
        for (e, x) in &self.poly {
            for (j, &vj) in v.iter().enumerate() {
                if vj != 0.0 {
                    let mut e2 = e.clone();
                    e2[j] += 1;
                    *poly.entry(e2).or_insert(ZERO) += x * vj;
                }
            }
        }
        self.same_profile(poly)
    }

    /// `u -> f(u + w)`.
    pub fn translate(&self, w: &[f64]) -> TestFunction {
        let d = self.d();
        let mut poly: BTreeMap<Vec<u32>, Complex64> = BTreeMap::new();
        for (e, x) in &self.poly {
            // prod_j (u_j + w_j)^{e_j} expanded binomially
            let mut partial: BTreeMap<Vec<u32>, Complex64> = BTreeMap::from([(vec![0; d], *x)]);
            for j in 0..d {
                let mut next = BTreeMap::new();
                for (pe, px) in &partial {
                    let mut binom = 1.0;
                    for k in 0..=e[j] {
                        let mut ne = pe.clone();
                        ne[j] += k;
                        let coeff = binom * w[j].powi((e[j] - k) as i32);
                        *next.entry(ne).or_insert(ZERO) += px * coeff;
                        binom = binom * f64::from(e[j] - k) / f64::from(k + 1);
                    }
                }
                partial = next;
            }
            for (pe, px) in partial {
                *poly.entry(pe).or_insert(ZERO) += px;
            }
        }
        let aw = &self.a * nalgebra::DVector::from_column_slice(w);
        let b = self.b.iter().enumerate().map(|(j, b)| b + 2.0 * aw[j]).collect();
        let bw: Complex64 = self.b.iter().zip(w).map(|(b, x)| b * x).sum();
        let waw: f64 = w.iter().zip(aw.iter()).map(|(x, y)| x * y).sum();
        let mut f = TestFunction {
            poly,
            a: self.a.clone(),
            b,
            c: self.c + bw + waw,
        };
        f.prune();
        f
    }

    /// Exact directional derivative `delta_v f = grad f . v`.
    pub fn derivative(&self, v: &[f64]) -> TestFunction {
        // grad(p e^g) = (grad p + p grad g) e^g with grad g = 2 A u + b
        let mut poly: BTreeMap<Vec<u32>, Complex64> = BTreeMap::new();
        for (e, x) in &self.poly {
            for (j, &vj) in v.iter().enumerate() {
                if vj != 0.0 && e[j] > 0 {
                    let mut e2 = e.clone();
                    e2[j] -= 1;
                    *poly.entry(e2).or_insert(ZERO) += x * (vj * f64::from(e[j]));
                }
            }
        }
        let av = &self.a * nalgebra::DVector::from_column_slice(v);
        let bv: Complex64 = self.b.iter().zip(v).map(|(b, x)| b * x).sum();
        let mut grad_g = self.same_profile(self.poly.clone()).mul_linear((2.0 * av).as_slice());
        for (e, x) in &self.poly {
            *grad_g.poly.entry(e.clone()).or_insert(ZERO) += x * bv;
        }
        for (e, x) in grad_g.poly {
            *poly.entry(e).or_insert(ZERO) += x;
        }
        self.same_profile(poly)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> TestFunction {
        TestFunction::new(
            BTreeMap::from([
                (vec![0, 0], Complex64::new(1.0, 0.5)),
                (vec![2, 1], Complex64::new(-0.3, 0.0)),
                (vec![0, 3], Complex64::new(0.0, 0.7)),
            ]),
            DMatrix::from_row_slice(2, 2, &[-0.4, 0.1, 0.1, -0.6]),
            vec![Complex64::new(0.2, 0.3), Complex64::new(-0.1, 0.0)],
            Complex64::new(0.05, -0.2),
        )
    }

    #[test]
    fn translation_is_pointwise_shift() {
        let f = sample();
        let w = [0.7, -1.2];
        let g = f.translate(&w);
        for u in [[0.0, 0.0], [0.3, -0.8], [1.5, 2.0]] {
            let shifted = [u[0] + w[0], u[1] + w[1]];
            assert!((g.eval(&u) - f.eval(&shifted)).norm() < 1e-12);
        }
    }

    #[test]
    fn derivative_matches_central_difference() {
        let f = sample();
        let v = [0.6, -0.4];
        let df = f.derivative(&v);
        let u = [0.3, 0.9];
        let h = 1e-5;
        let fd = (f.eval(&[u[0] + h * v[0], u[1] + h * v[1]]) - f.eval(&[u[0] - h * v[0], u[1] - h * v[1]])) / (2.0 * h);
        assert!((df.eval(&u) - fd).norm() < 1e-8);
    }

    #[test]
    fn derivative_of_linear_form_is_inner_product() {
        let v = [0.25, -1.5];
        let w = [2.0, 0.5];
        let lin = TestFunction::one(2).mul_linear(&w);
        let d = lin.derivative(&v);
        let expected = w[0] * v[0] + w[1] * v[1];
        assert_eq!(d.eval(&[0.3, -0.7]), c64(expected));
        assert_eq!(d.eval(&[10.0, 4.0]), c64(expected));
    }

    #[test]
    fn linear_phase_and_sum() {
        let f = sample();
        let g = f.mul_exp_linear(&[Complex64::new(0.0, 1.0), ZERO], ZERO);
        let u = [0.4, 0.1];
        assert!((g.eval(&u) - f.eval(&u) * Complex64::new(0.0, 0.4).exp()).norm() < 1e-14);
        assert!(f.add(&g).is_none());
        let two = f.add(&f).unwrap();
        assert!((two.eval(&u) - f.eval(&u) * 2.0).norm() < 1e-14);
    }
}
