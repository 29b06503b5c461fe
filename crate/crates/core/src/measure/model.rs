use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::testfn::TestFunction;
use super::MeasureError;

/// Centered Gaussian measure on `R^d` with characteristic function
/// `exp(-M_K(v)/2)`, `M_K(v) = |K^-1 v|^2`. Its covariance is `C^-1` with
/// `C = K K^T`, so the density is proportional to `exp(-u^T C u / 2)`.
/// Mode vectors are in orthonormal coordinates, so `u_v = v`.
#[derive(Clone, Debug, PartialEq)]
pub struct GaussianModel {
    k: DMatrix<f64>,
    k_inv: DMatrix<f64>,
    c: DMatrix<f64>,
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

impl GaussianModel {
    pub fn new(k: DMatrix<f64>) -> Result<Self, MeasureError> {
        if k.nrows() != k.ncols() || k.nrows() == 0 {
            return Err(MeasureError::Shape(format!("K must be square, got {}x{}", k.nrows(), k.ncols())));
        }
        let k_inv = k.clone().try_inverse().ok_or(MeasureError::Singular)?;
        if !k_inv.iter().all(|x| x.is_finite()) {
            return Err(MeasureError::Singular);
        }
        let c = &k * k.transpose();
        Ok(GaussianModel { k, k_inv, c })
    }

    /// `K = sqrt(2) 1`: the Fock measure, `Z(v) = exp(-|v|^2/4)`.
    pub fn fock(d: usize) -> Self {
        GaussianModel::new(DMatrix::identity(d, d) * std::f64::consts::SQRT_2).expect("invertible")
    }

    pub fn diagonal(diag: &[f64]) -> Result<Self, MeasureError> {
        GaussianModel::new(DMatrix::from_diagonal(&DVector::from_column_slice(diag)))
    }

    pub fn d(&self) -> usize {
        self.k.nrows()
    }

    pub fn k(&self) -> &DMatrix<f64> {
        &self.k
    }

    pub fn k_inv(&self) -> &DMatrix<f64> {
        &self.k_inv
    }

    pub fn c(&self) -> &DMatrix<f64> {
        &self.c
    }

    fn check(&self, x: &[f64]) -> Result<(), MeasureError> {
        if x.len() != self.d() {
            return Err(MeasureError::Shape(format!("vector of length {} in dimension {}", x.len(), self.d())));
        }
        Ok(())
    }

    pub fn apply_c(&self, v: &[f64]) -> Vec<f64> {
        (&self.c * DVector::from_column_slice(v)).as_slice().to_vec()
    }

    /// `M_K(v) = |K^-1 v|^2`.
    pub fn covariance_form(&self, v: &[f64]) -> f64 {
        (&self.k_inv * DVector::from_column_slice(v)).norm_squared()
    }

    /// `exp(-M_K(v)/2)`.
    pub fn generating_function(&self, v: &[f64]) -> f64 {
        (-0.5 * self.covariance_form(v)).exp()
    }

    /// `u_v`, the image of `v` in the dual.
    pub fn embed(&self, v: &[f64]) -> Vec<f64> {
        v.to_vec()
    }

    /// `a(v,u) = exp(-M_K(Cv)/4 - <Cv,u>/2)`.
    pub fn cocycle(&self, v: &[f64], u: &[f64]) -> Result<f64, MeasureError> {
        self.check(v)?;
        self.check(u)?;
        Ok(self.log_cocycle(v, u).exp())
    }

    fn log_cocycle(&self, v: &[f64], u: &[f64]) -> f64 {
        let cv = self.apply_c(v);
        -0.25 * self.covariance_form(&cv) - 0.5 * dot(&cv, u)
    }

    /// `|a(v+v',u) - a(v,u) a(v',u+u_v)|`.
    pub fn cocycle_residual(&self, v: &[f64], w: &[f64], u: &[f64]) -> Result<f64, MeasureError> {
        let vw: Vec<f64> = v.iter().zip(w).map(|(a, b)| a + b).collect();
        let shifted: Vec<f64> = u.iter().zip(self.embed(v)).map(|(a, b)| a + b).collect();
        let lhs = self.cocycle(&vw, u)?;
        let rhs = self.cocycle(v, u)? * self.cocycle(w, &shifted)?;
        Ok((lhs - rhs).abs())
    }

    /// Normalized density of the measure.
    pub fn density(&self, u: &[f64]) -> f64 {
        let d = self.d() as f64;
        let det_c = self.c.determinant();
        let quad = dot(u, &self.apply_c(u));
        (det_c.sqrt() / (2.0 * std::f64::consts::PI).powf(d / 2.0)) * (-0.5 * quad).exp()
    }

    /// `|rho(u+u_v) / (rho(u) a(v,u)^2) - 1|` with `rho` evaluated directly
    /// from the Gaussian density.
    pub fn radon_nikodym_residual(&self, v: &[f64], u: &[f64]) -> Result<f64, MeasureError> {
        let shifted: Vec<f64> = u.iter().zip(self.embed(v)).map(|(a, b)| a + b).collect();
        let ratio = self.density(&shifted) / self.density(u);
        let a = self.cocycle(v, u)?;
        Ok((ratio / (a * a) - 1.0).abs())
    }

    /// `-<Cv,u>/2`, the closed form of the eta limit.
    pub fn eta_closed_form(&self, v: &[f64], u: &[f64]) -> f64 {
        -0.5 * dot(&self.apply_c(v), u)
    }

    /// `lim_{alpha->0} (a(alpha v, u) - 1)/alpha`, from the difference
    /// quotients at `alpha_0 2^-k`, `k < levels`, extrapolated by Neville's
    /// scheme in `alpha`.
    pub fn eta(&self, v: &[f64], u: &[f64], sweep: EtaSweep) -> Result<EtaEstimate, MeasureError> {
        self.check(v)?;
        self.check(u)?;
        if !(sweep.alpha0 > 0.0) || sweep.levels == 0 {
            return Err(MeasureError::InvalidArgument("eta sweep needs alpha0 > 0 and levels > 0".into()));
        }
        let alphas: Vec<f64> = (0..sweep.levels).map(|k| sweep.alpha0 * 0.5f64.powi(k as i32)).collect();
        let quotients: Vec<f64> = alphas
            .iter()
            .map(|&al| {
                let av: Vec<f64> = v.iter().map(|x| al * x).collect();
                self.log_cocycle(&av, u).exp_m1() / al
            })
            .collect();
        // Neville: p[i] holds the interpolant through points i..=i+m at alpha = 0
        let mut p = quotients.clone();
        for m in 1..alphas.len() {
            for i in 0..alphas.len() - m {
                let (xi, xj) = (alphas[i], alphas[i + m]);
                p[i] = (xi * p[i + 1] - xj * p[i]) / (xi - xj);
            }
        }
        Ok(EtaEstimate {
            value: p[0],
            closed_form: self.eta_closed_form(v, u),
            alphas,
            quotients,
        })
    }

    /// `(P_Z(v) f)(u) = a(v,u) f(u + u_v)`, exactly inside the test class.
    pub fn weyl_p(&self, v: &[f64], f: &TestFunction) -> TestFunction {
        let cv = self.apply_c(v);
        let k: Vec<Complex64> = cv.iter().map(|x| Complex64::new(-0.5 * x, 0.0)).collect();
        let c0 = Complex64::new(-0.25 * self.covariance_form(&cv), 0.0);
        f.translate(&self.embed(v)).mul_exp_linear(&k, c0)
    }

    /// `(T_Z(v) f)(u) = exp(i<v,u>) f(u)`.
    pub fn weyl_t(&self, v: &[f64], f: &TestFunction) -> TestFunction {
        let k: Vec<Complex64> = v.iter().map(|x| Complex64::new(0.0, *x)).collect();
        f.mul_exp_linear(&k, Complex64::new(0.0, 0.0))
    }

    /// `(P(v) T(v') f)(u) - exp(i<v|v'>) (T(v') P(v) f)(u)`.
    pub fn weyl_relation_residual(&self, v: &[f64], w: &[f64], f: &TestFunction, u: &[f64]) -> Complex64 {
        let lhs = self.weyl_p(v, &self.weyl_t(w, f)).eval(u);
        let rhs = self.weyl_t(w, &self.weyl_p(v, f)).eval(u);
        lhs - Complex64::new(0.0, dot(v, w)).exp() * rhs
    }

    /// `phi(v) f = <v,u> f`.
    pub fn phi(&self, v: &[f64], f: &TestFunction) -> TestFunction {
        f.mul_linear(v)
    }

    /// `pi(v) f = -i(delta_v f - <Cv,u> f / 2)`.
    pub fn pi(&self, v: &[f64], f: &TestFunction) -> TestFunction {
        let cv: Vec<f64> = self.apply_c(v).iter().map(|x| -0.5 * x).collect();
        let inner = f
            .derivative(&self.embed(v))
            .add(&f.mul_linear(&cv))
            .expect("same profile");
        inner.scale(Complex64::new(0.0, -1.0))
    }

    /// `a-(v) = (phi(v) + i pi(v))/sqrt2`.
    pub fn annihilation(&self, v: &[f64], f: &TestFunction) -> TestFunction {
        let ipi = self.pi(v, f).scale(Complex64::new(0.0, 1.0));
        self.phi(v, f)
            .add(&ipi)
            .expect("same profile")
            .scale(Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0))
    }

    /// `([pi(v), phi(v')] f)(u) + i<v|v'> f(u)`.
    pub fn ccr_residual(&self, v: &[f64], w: &[f64], f: &TestFunction, u: &[f64]) -> Complex64 {
        let pf = self.pi(v, &self.phi(w, f)).eval(u);
        let fp = self.phi(w, &self.pi(v, f)).eval(u);
        pf - fp + Complex64::new(0.0, dot(v, w)) * f.eval(u)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EtaSweep {
    pub alpha0: f64,
    pub levels: usize,
}

impl Default for EtaSweep {
    fn default() -> Self {
        EtaSweep { alpha0: 0.05, levels: 8 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EtaEstimate {
    pub value: f64,
    pub closed_form: f64,
    pub alphas: Vec<f64>,
    pub quotients: Vec<f64>,
}

impl EtaEstimate {
    pub fn error(&self) -> f64 {
        (self.value - self.closed_form).abs()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeMap;

    fn model() -> GaussianModel {
        GaussianModel::new(DMatrix::from_row_slice(2, 2, &[1.2, 0.3, -0.2, 0.8])).unwrap()
    }

    #[test]
    fn cocycle_at_zero_is_one() {
        let m = model();
        assert_eq!(m.cocycle(&[0.0, 0.0], &[3.0, -1.0]).unwrap(), 1.0);
    }

    #[test]
    fn cocycle_identity_and_density_ratio() {
        let m = model();
        let (v, w, u) = ([0.4, -0.7], [1.1, 0.2], [-0.3, 0.9]);
        assert!(m.cocycle_residual(&v, &w, &u).unwrap() < 1e-12);
        assert!(m.radon_nikodym_residual(&v, &u).unwrap() < 1e-12);
    }

    #[test]
    fn density_is_normalized() {
        // oracle: tensor midpoint rule on [-8, 8]^2
        let m = model();
        let n = 400;
        let h = 16.0 / n as f64;
        let mut total = 0.0;
        for i in 0..n {
            for j in 0..n {
                let u = [-8.0 + (i as f64 + 0.5) * h, -8.0 + (j as f64 + 0.5) * h];
                total += m.density(&u);
            }
        }
        assert!((total * h * h - 1.0).abs() < 1e-8);
    }

    #[test]
    fn eta_matches_closed_form() {
        let m = model();
        let est = m.eta(&[0.5, -1.3], &[0.8, 0.4], EtaSweep::default()).unwrap();
        assert!(est.error() < 1e-10, "{est:?}");
        let zero = m.eta(&[0.0, 0.0], &[0.8, 0.4], EtaSweep::default()).unwrap();
        assert_eq!(zero.value, 0.0);
    }

    #[test]
    fn fock_vacuum_is_annihilated() {
        let m = GaussianModel::fock(2);
        let one = TestFunction::one(2);
        let a = m.annihilation(&[0.7, -0.3], &one);
        assert!(a.eval(&[0.2, 1.4]).norm() < 1e-14);
        assert!(a.eval(&[-3.0, 0.5]).norm() < 1e-14);
    }

    #[test]
    fn weyl_relation_and_ccr() {
        let m = model();
        let f = TestFunction::new(
            BTreeMap::from([(vec![1, 0], Complex64::new(0.5, 0.1)), (vec![0, 2], Complex64::new(1.0, 0.0))]),
            DMatrix::from_row_slice(2, 2, &[-0.5, 0.0, 0.0, -0.3]),
            vec![Complex64::new(0.1, 0.0); 2],
            Complex64::new(0.0, 0.0),
        );
        let u = [0.3, -0.6];
        assert!(m.weyl_relation_residual(&[0.4, 0.2], &[-0.5, 0.9], &f, &u).norm() < 1e-12);
        assert!(m.ccr_residual(&[0.4, 0.2], &[-0.5, 0.9], &f, &u).norm() < 1e-12);
        let t_only = m.weyl_t(&[-0.5, 0.9], &f);
        let lhs = m.weyl_p(&[0.0, 0.0], &t_only).eval(&u);
        assert!((lhs - t_only.eval(&u)).norm() < 1e-15);
    }
}
