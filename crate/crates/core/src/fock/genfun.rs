use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::ops::{bogoliubov_ladder, orthonormal_ladder, BogoliubovSpec};
use super::space::ModeSpace;
use super::sparse::SparseOperator;
use super::FockError;

const TAYLOR_TOL: f64 = 1e-17;
const TAYLOR_MAX_TERMS: usize = 400;

fn norm(v: &[Complex64]) -> f64 {
    v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

/// `exp(t A) v` by scaling and squaring the Taylor series: the interval is
/// cut into `ceil(|t| ||A||_inf)` steps, each summed until the next term
/// drops below roundoff.
pub fn expm_apply(a: &SparseOperator, t: Complex64, v: &[Complex64]) -> Vec<Complex64> {
    let beta = t.norm() * a.norm_inf();
    let steps = beta.ceil().max(1.0) as usize;
    let h = t / steps as f64;
    let mut x = v.to_vec();
    for _ in 0..steps {
        let mut term = x.clone();
        let mut sum = x.clone();
        for k in 1..=TAYLOR_MAX_TERMS {
            term = a.apply(&term);
            let f = h / k as f64;
            term.iter_mut().for_each(|y| *y *= f);
            sum.iter_mut().zip(&term).for_each(|(s, y)| *s += y);
            if norm(&term) <= TAYLOR_TOL * norm(&sum) {
                break;
            }
        }
        x = sum;
    }
    x
}

/// `<theta| exp(i phi_b(v)) |theta>` with `theta` the Fock vacuum and
/// `phi_b(v) = (b+(v) + b-(v))/sqrt2` built from the Bogoliubov ladder of
/// `spec` (the Fock ladder when `None`).
pub fn vacuum_generating_function(
    m: &ModeSpace,
    v: &[Complex64],
    spec: Option<&BogoliubovSpec>,
) -> Result<Complex64, FockError> {
    if v.len() != m.d() {
        return Err(FockError::Shape(format!("vector of length {} for {} modes", v.len(), m.d())));
    }
    if v.iter().all(|x| *x == Complex64::new(0.0, 0.0)) {
        return Ok(Complex64::new(1.0, 0.0));
    }
    let ladder = match spec {
        Some(s) => bogoliubov_ladder(m, s)?,
        None => orthonormal_ladder(m),
    };
    let (bp, bm) = ladder.along(m, v);
    let phi = (&bp + &bm).scale(Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0));
    let mut theta = vec![Complex64::new(0.0, 0.0); m.dim()];
    theta[m.vacuum()] = Complex64::new(1.0, 0.0);
    let out = expm_apply(&phi, Complex64::new(0.0, 1.0), &theta);
    Ok(out[m.vacuum()])
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TruncationPoint {
    pub nmax: u32,
    pub re: f64,
    pub im: f64,
    pub error: f64,
}

/// Generating function at each cutoff, with the distance to `reference`.
pub fn truncation_sweep(
    d: usize,
    v: &[Complex64],
    spec: Option<&BogoliubovSpec>,
    nmaxes: &[u32],
    reference: f64,
) -> Result<Vec<TruncationPoint>, FockError> {
    nmaxes
        .iter()
        .map(|&nmax| {
            let m = ModeSpace::new(d, nmax)?;
            let z = vacuum_generating_function(&m, v, spec)?;
            Ok(TruncationPoint {
                nmax,
                re: z.re,
                im: z.im,
                error: (z - Complex64::new(reference, 0.0)).norm(),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn re(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn expm_matches_dense_pade() {
        let m = ModeSpace::new(1, 12).unwrap();
        let l = orthonormal_ladder(&m);
        let a = (&l.plus[0] + &l.minus[0]).scale(re(0.9));
        let mut v = vec![re(0.0); m.dim()];
        v[0] = re(1.0);
        v[3] = Complex64::new(0.0, 0.5);
        let ours = expm_apply(&a, Complex64::new(0.0, 1.0), &v);
        let dense = (a.to_dense() * Complex64::new(0.0, 1.0)).exp() * nalgebra::DVector::from_vec(v);
        for (x, y) in ours.iter().zip(dense.iter()) {
            assert!((x - y).norm() < 1e-12);
        }
    }

    #[test]
    fn zero_vector_gives_one() {
        let m = ModeSpace::new(2, 4).unwrap();
        let z = vacuum_generating_function(&m, &[re(0.0), re(0.0)], None).unwrap();
        assert_eq!(z, re(1.0));
    }

    #[test]
    fn fock_generating_function() {
        let m = ModeSpace::new(1, 20).unwrap();
        let z = vacuum_generating_function(&m, &[re(1.0)], None).unwrap();
        assert!((z - re((-0.25f64).exp())).norm() < 1e-8);
    }

    #[test]
    fn squeezed_generating_function_matches_gaussian_quadrature() {
        // oracle: midpoint-rule integral of cos(x) against N(0, c^2) with c^2 = 1
        let n = 200_000;
        let (lo, hi) = (-12.0f64, 12.0f64);
        let h = (hi - lo) / n as f64;
        let oracle: f64 = (0..n)
            .map(|k| {
                let x = lo + (k as f64 + 0.5) * h;
                x.cos() * (-0.5 * x * x).exp()
            })
            .sum::<f64>()
            * h
            / (2.0 * std::f64::consts::PI).sqrt();
        let m = ModeSpace::new(1, 40).unwrap();
        let spec = BogoliubovSpec::from_c(1, 1.0).unwrap();
        let z = vacuum_generating_function(&m, &[re(1.0)], Some(&spec)).unwrap();
        assert!((z.re - oracle).abs() < 1e-6, "{z} vs {oracle}");
        assert!(z.im.abs() < 1e-12);
    }

    #[test]
    fn truncation_error_decreases() {
        let exact = (-0.25f64).exp();
        let sweep = truncation_sweep(1, &[re(1.0)], None, &[5, 10, 20, 40], exact).unwrap();
        for pair in sweep.windows(2) {
            assert!(pair[1].error <= pair[0].error.max(1e-14));
        }
        assert!(sweep[2].error < 1e-8);
    }
}
