use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::fock::{phi_pi_matrices, ModeSpace};

/// Nodes and weights for `int f(x) exp(-x^2) dx` from the eigen-decomposition
/// of the Jacobi matrix of the Hermite recurrence.
pub fn gauss_hermite(n: usize) -> (Vec<f64>, Vec<f64>) {
    let jacobi = DMatrix::from_fn(n, n, |i, j| {
        if i + 1 == j || j + 1 == i {
            (i.max(j) as f64 / 2.0).sqrt()
        } else {
            0.0
        }
    });
    let eig = SymmetricEigen::new(jacobi);
    let mu0 = std::f64::consts::PI.sqrt();
    let mut pairs: Vec<(f64, f64)> = (0..n)
        .map(|k| (eig.eigenvalues[k], mu0 * eig.eigenvectors[(0, k)].powi(2)))
        .collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    pairs.into_iter().unzip()
}

/// Orthonormal Hermite functions of `L^2(R, e^{-x^2}/sqrt(pi) dx)` and their
/// derivatives at `x`, indices `0..=n`.
fn hermite_basis(n: usize, x: f64) -> (Vec<f64>, Vec<f64>) {
    let mut h = vec![0.0; n + 1];
    h[0] = 1.0;
    if n >= 1 {
        h[1] = 2f64.sqrt() * x;
    }
    for k in 1..n {
        h[k + 1] = (2.0 / (k + 1) as f64).sqrt() * x * h[k] - (k as f64 / (k + 1) as f64).sqrt() * h[k - 1];
    }
    let dh = (0..=n)
        .map(|k| if k == 0 { 0.0 } else { (2.0 * k as f64).sqrt() * h[k - 1] })
        .collect();
    (h, dh)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CrossCheck {
    pub nmax: u32,
    pub nodes: usize,
    pub phi_max_error: f64,
    pub pi_max_error: f64,
}

/// Single-mode Fock measure (`K = sqrt2`, density `exp(-u^2)/sqrt(pi)`):
/// matrix elements `<h_m|phi|h_n>` with `phi = u` and
/// `<h_m|pi|h_n>` with `pi = -i(d/du - u)` by Gauss-Hermite quadrature,
/// compared against the truncated Fock matrices.
pub fn fock_cross_check(nmax: u32, nodes: usize) -> CrossCheck {
    let n = nmax as usize;
    let (xs, ws) = gauss_hermite(nodes);
    let mu0 = std::f64::consts::PI.sqrt();
    let mut phi = DMatrix::<f64>::zeros(n + 1, n + 1);
    let mut pi_im = DMatrix::<f64>::zeros(n + 1, n + 1);
    for (&x, &w) in xs.iter().zip(&ws) {
        let (h, dh) = hermite_basis(n, x);
        let w = w / mu0;
        for r in 0..=n {
            for c in 0..=n {
                phi[(r, c)] += w * h[r] * x * h[c];
                // pi h_c = -i (h_c' - x h_c)
                pi_im[(r, c)] -= w * h[r] * (dh[c] - x * h[c]);
            }
        }
    }
    let space = ModeSpace::new(1, nmax).expect("one mode");
    let ops = phi_pi_matrices(&space);
    let mut phi_err: f64 = 0.0;
    let mut pi_err: f64 = 0.0;
    for r in 0..=n {
        for c in 0..=n {
            phi_err = phi_err.max((ops.phi[0].get(r, c) - Complex64::new(phi[(r, c)], 0.0)).norm());
            pi_err = pi_err.max((ops.pi[0].get(r, c) - Complex64::new(0.0, pi_im[(r, c)])).norm());
        }
    }
    CrossCheck {
        nmax,
        nodes,
        phi_max_error: phi_err,
        pi_max_error: pi_err,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_hermite_integrates_moments() {
        let (xs, ws) = gauss_hermite(64);
        let moment = |k: i32| xs.iter().zip(&ws).map(|(x, w)| w * x.powi(k)).sum::<f64>();
        let sqrt_pi = std::f64::consts::PI.sqrt();
        assert!((moment(0) - sqrt_pi).abs() < 1e-12);
        assert!((moment(2) - sqrt_pi / 2.0).abs() < 1e-12);
        assert!((moment(4) - 3.0 * sqrt_pi / 4.0).abs() < 1e-12);
        assert!(moment(3).abs() < 1e-12);
    }

    #[test]
    fn hermite_functions_are_orthonormal() {
        let (xs, ws) = gauss_hermite(40);
        let mu0 = std::f64::consts::PI.sqrt();
        let mut g = DMatrix::<f64>::zeros(8, 8);
        for (&x, &w) in xs.iter().zip(&ws) {
            let (h, _) = hermite_basis(7, x);
            for i in 0..8 {
                for j in 0..8 {
                    g[(i, j)] += w / mu0 * h[i] * h[j];
                }
            }
        }
        assert!((g - DMatrix::identity(8, 8)).norm() < 1e-12);
    }

    #[test]
    fn quadrature_matches_fock_matrices() {
        let check = fock_cross_check(10, 64);
        assert!(check.phi_max_error < 1e-8, "{check:?}");
        assert!(check.pi_max_error < 1e-8, "{check:?}");
    }
}
