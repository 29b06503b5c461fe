use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::ops::{number_operator, BogoliubovSpec};
use super::space::ModeSpace;
use super::sparse::SparseOperator;
use super::FockError;
use crate::exec::Execution;

/// Dense diagonalization up to this dimension, Lanczos above it.
pub const DENSE_LIMIT: usize = 2000;

const LANCZOS_MAX: usize = 600;
const LANCZOS_CHECK_EVERY: usize = 20;
const LANCZOS_TOL: f64 = 1e-12;
const CONVERGENCE_TOL: f64 = 1e-6;

fn dot(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

fn tridiagonal_eigs(alpha: &[f64], beta: &[f64]) -> Vec<f64> {
    let m = alpha.len();
    let t = DMatrix::from_fn(m, m, |i, j| {
        if i == j {
            alpha[i]
        } else if i + 1 == j {
            beta[i]
        } else if j + 1 == i {
            beta[j]
        } else {
            0.0
        }
    });
    let mut e: Vec<f64> = SymmetricEigen::new(t).eigenvalues.iter().copied().collect();
    e.sort_by(f64::total_cmp);
    e
}

/// Lowest `k` Ritz values of a Hermitian operator, with full
/// reorthogonalization and a fixed start vector.
fn lanczos_lowest(a: &SparseOperator, k: usize) -> Vec<f64> {
    let n = a.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut q: Vec<Complex64> = (0..n).map(|_| Complex64::new(rng.random::<f64>() - 0.5, 0.0)).collect();
    let nq = dot(&q, &q).re.sqrt();
    q.iter_mut().for_each(|x| *x /= nq);
    let mut basis = vec![q];
    let (mut alpha, mut beta) = (Vec::new(), Vec::new());
    let mut previous: Option<Vec<f64>> = None;
    let limit = LANCZOS_MAX.min(n);
    loop {
        let j = basis.len() - 1;
        let mut w = a.apply(&basis[j]);
        alpha.push(dot(&basis[j], &w).re);
        for _ in 0..2 {
            for b in &basis {
                let c = dot(b, &w);
                w.iter_mut().zip(b).for_each(|(x, y)| *x -= c * y);
            }
        }
        let m = alpha.len();
        let b = dot(&w, &w).re.sqrt();
        let done = m == limit || b < 1e-13;
        if done || m % LANCZOS_CHECK_EVERY == 0 {
            let ritz = tridiagonal_eigs(&alpha, &beta);
            let low: Vec<f64> = ritz.into_iter().take(k).collect();
            let settled = previous.as_ref().is_some_and(|p| {
                p.len() == low.len()
                    && p.iter().zip(&low).all(|(x, y)| (x - y).abs() <= LANCZOS_TOL * (1.0 + y.abs()))
            });
            if done || settled {
                return low;
            }
            previous = Some(low);
        }
        beta.push(b);
        w.iter_mut().for_each(|x| *x /= b);
        basis.push(w);
    }
}

/// Smallest `k` eigenvalues, ascending.
pub fn lowest_eigenvalues(a: &SparseOperator, k: usize) -> Vec<f64> {
    if a.dim() <= DENSE_LIMIT {
        let mut e: Vec<f64> = SymmetricEigen::new(a.to_dense()).eigenvalues.iter().copied().collect();
        e.sort_by(f64::total_cmp);
        e.truncate(k);
        e
    } else {
        lanczos_lowest(a, k)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectrumReport {
    pub operator: String,
    pub d: usize,
    pub nmax: u32,
    pub eigenvalues: Vec<f64>,
    /// Lowest eigenvalues agree with the `nmax - 2` run to `1e-6`.
    pub converged: bool,
    pub method: String,
}

/// Lowest `k` eigenvalues of the (possibly Bogoliubov-transformed) number
/// operator, with a truncation check against cutoff `nmax - 2`.
pub fn spectrum(d: usize, nmax: u32, spec: Option<&BogoliubovSpec>, k: usize) -> Result<SpectrumReport, FockError> {
    let at = |cut: u32| -> Result<(Vec<f64>, usize), FockError> {
        let m = ModeSpace::new(d, cut)?;
        let n = number_operator(&m, spec)?;
        Ok((lowest_eigenvalues(&n, k), m.dim()))
    };
    let (eigenvalues, dim) = at(nmax)?;
    let converged = if nmax >= 2 {
        let (coarse, _) = at(nmax - 2)?;
        coarse.len() == eigenvalues.len()
            && coarse
                .iter()
                .zip(&eigenvalues)
                .all(|(a, b)| (a - b).abs() <= CONVERGENCE_TOL * (1.0 + b.abs()))
    } else {
        false
    };
    let operator = match spec {
        Some(s) if !s.is_fock() => "bogoliubov-number",
        _ => "number",
    };
    Ok(SpectrumReport {
        operator: operator.to_string(),
        d,
        nmax,
        eigenvalues,
        converged,
        method: if dim <= DENSE_LIMIT { "dense" } else { "lanczos" }.to_string(),
    })
}

/// `<theta|A|theta>` for the Fock vacuum.
pub fn vacuum_expectation(m: &ModeSpace, a: &SparseOperator) -> f64 {
    a.get(m.vacuum(), m.vacuum()).re
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum Family {
    /// `r_j = r` for every mode.
    Uniform { r: f64 },
    /// `r_j = r 2^-j`.
    Summable { r: f64 },
}

impl Family {
    pub fn spec(self, d: usize) -> BogoliubovSpec {
        match self {
            Family::Uniform { r } => BogoliubovSpec::uniform(d, r),
            Family::Summable { r } => BogoliubovSpec::summable(d, r),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrendPoint {
    pub d: usize,
    pub nmax: u32,
    pub min_eigenvalue: f64,
    pub converged: bool,
    /// `<theta|N|theta>` for the Fock vacuum `theta`.
    pub vacuum_expectation: f64,
    /// `sum_j sinh^2 r_j`.
    pub additive_value: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrendReport {
    pub family: Family,
    pub points: Vec<TrendPoint>,
    /// Least-squares slope of the minimum eigenvalue against `d`.
    pub min_eigenvalue_slope: f64,
    /// Least-squares slope of the vacuum expectation against `d`.
    pub expectation_slope: f64,
}

fn slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    if xs.len() < 2 {
        return 0.0;
    }
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    sxy / sxx
}

/// Transformed number operator across mode counts, one report per family.
/// Every `(family, d)` pair is independent and runs through `exec`.
pub fn boundedness_trend(
    families: &[Family],
    ds: &[usize],
    nmax: u32,
    exec: Execution,
) -> Result<Vec<TrendReport>, FockError> {
    let jobs: Vec<(Family, usize)> = families
        .iter()
        .flat_map(|&f| ds.iter().map(move |&d| (f, d)))
        .collect();
    let points = exec.map(&jobs, |&(family, d)| -> Result<TrendPoint, FockError> {
        let spec = family.spec(d);
        let report = spectrum(d, nmax, Some(&spec), 1)?;
        let m = ModeSpace::new(d, nmax)?;
        let n = number_operator(&m, Some(&spec))?;
        Ok(TrendPoint {
            d,
            nmax,
            min_eigenvalue: report.eigenvalues[0],
            converged: report.converged,
            vacuum_expectation: vacuum_expectation(&m, &n),
            additive_value: spec.vacuum_number(),
        })
    });
    let points: Vec<TrendPoint> = points.into_iter().collect::<Result<_, _>>()?;
    Ok(families
        .iter()
        .enumerate()
        .map(|(i, &family)| {
            let pts = points[i * ds.len()..(i + 1) * ds.len()].to_vec();
            let xs: Vec<f64> = pts.iter().map(|p| p.d as f64).collect();
            let mins: Vec<f64> = pts.iter().map(|p| p.min_eigenvalue).collect();
            let exps: Vec<f64> = pts.iter().map(|p| p.vacuum_expectation).collect();
            TrendReport {
                family,
                min_eigenvalue_slope: slope(&xs, &mins),
                expectation_slope: slope(&xs, &exps),
                points: pts,
            }
        })
        .collect())
}
