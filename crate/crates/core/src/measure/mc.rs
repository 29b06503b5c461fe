use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use super::model::GaussianModel;
use super::MeasureError;
use crate::exec::Execution;

/// Samples per independent stream. Fixed so that results do not depend on
/// the thread count.
pub const CHUNK: usize = 4096;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct McEstimate {
    pub re: f64,
    pub im: f64,
    pub re_stderr: f64,
    pub im_stderr: f64,
    pub samples: usize,
    pub seed: u64,
}

impl McEstimate {
    /// Both parts within `k` standard errors of the real target.
    pub fn brackets(&self, target: f64, k: f64) -> bool {
        (self.re - target).abs() <= k * self.re_stderr && self.im.abs() <= k * self.im_stderr
    }
}

#[derive(Clone, Copy, Default)]
struct Sums {
    n: usize,
    cos: f64,
    cos2: f64,
    sin: f64,
    sin2: f64,
}

/// Monte-Carlo estimate of `E exp(i<v,u>)` for `u ~ mu_K`. Sample `u = K^-T z`
/// with `z` standard normal has covariance `C^-1`. Chunk `k` draws from
/// stream `k` of a ChaCha8 generator keyed by `seed`; chunk sums are
/// combined in chunk order.
pub fn bochner_mc(
    model: &GaussianModel,
    v: &[f64],
    samples: usize,
    seed: u64,
    exec: Execution,
) -> Result<McEstimate, MeasureError> {
    if v.len() != model.d() {
        return Err(MeasureError::Shape(format!("vector of length {} in dimension {}", v.len(), model.d())));
    }
    if samples < 2 {
        return Err(MeasureError::InvalidArgument("at least two samples are needed".into()));
    }
    // <v, K^-T z> = <K^-1 v, z>
    let w = (model.k_inv() * DVector::from_column_slice(v)).as_slice().to_vec();
    let chunks = samples.div_ceil(CHUNK);
    let sums = exec.map_range(chunks, |k| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(k as u64);
        let n = CHUNK.min(samples - k * CHUNK);
        let mut s = Sums {
            n,
            ..Sums::default()
        };
        for _ in 0..n {
            let phase: f64 = w
                .iter()
                .map(|wi| {
                    let z: f64 = StandardNormal.sample(&mut rng);
                    wi * z
                })
                .sum();
            let (sn, cs) = phase.sin_cos();
            s.cos += cs;
            s.cos2 += cs * cs;
            s.sin += sn;
            s.sin2 += sn * sn;
        }
        s
    });
    let total = sums.iter().fold(Sums::default(), |a, b| Sums {
        n: a.n + b.n,
        cos: a.cos + b.cos,
        cos2: a.cos2 + b.cos2,
        sin: a.sin + b.sin,
        sin2: a.sin2 + b.sin2,
    });
    let n = total.n as f64;
    let stderr = |sum: f64, sum2: f64| {
        let mean = sum / n;
        let var = ((sum2 - n * mean * mean) / (n - 1.0)).max(0.0);
        (var / n).sqrt()
    };
    Ok(McEstimate {
        re: total.cos / n,
        im: total.sin / n,
        re_stderr: stderr(total.cos, total.cos2),
        im_stderr: stderr(total.sin, total.sin2),
        samples,
        seed,
    })
}

/// Smallest eigenvalue of the Hermitian matrix `Z(v_i - v_j)`.
pub fn positive_definiteness_check<F>(z: F, vectors: &[Vec<f64>]) -> Result<f64, MeasureError>
where
    F: Fn(&[f64]) -> Complex64,
{
    if vectors.is_empty() {
        return Err(MeasureError::InvalidArgument("no vectors".into()));
    }
    let m = vectors.len();
    let gram = DMatrix::from_fn(m, m, |i, j| {
        let diff: Vec<f64> = vectors[i].iter().zip(&vectors[j]).map(|(a, b)| a - b).collect();
        z(&diff)
    });
    let herm = (&gram + gram.adjoint()) * Complex64::new(0.5, 0.0);
    Ok(herm.symmetric_eigenvalues().min())
}
