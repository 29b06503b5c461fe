use std::collections::HashMap;

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::FockError;

/// Occupation numbers `(n_0, ..., n_{d-1})`.
pub type FockIndex = Vec<u32>;

/// Finite window of `d` modes with a total-occupation cutoff.
#[derive(Clone, Debug)]
pub struct ModeSpace {
    d: usize,
    nmax: u32,
    gram: DMatrix<Complex64>,
    /// Lower Cholesky factor of `gram`; row `j` gives the orthonormal
    /// coordinates of mode vector `v_j`.
    chol: DMatrix<Complex64>,
    basis: Vec<FockIndex>,
    index: HashMap<FockIndex, usize>,
}

impl ModeSpace {
    pub fn new(d: usize, nmax: u32) -> Result<Self, FockError> {
        ModeSpace::with_gram(DMatrix::identity(d, d), nmax)
    }

    pub fn with_gram(gram: DMatrix<Complex64>, nmax: u32) -> Result<Self, FockError> {
        let d = gram.nrows();
        if d == 0 || gram.ncols() != d {
            return Err(FockError::Shape(format!("gram must be square and nonempty, got {}x{}", d, gram.ncols())));
        }
        if (&gram - gram.adjoint()).norm() > 1e-12 * (1.0 + gram.norm()) {
            return Err(FockError::NotPositiveDefinite);
        }
        // complex Cholesky succeeds on indefinite input through complex
        // square roots, so definiteness is checked on the spectrum
        let min_eig = gram.clone().symmetric_eigenvalues().min();
        if min_eig <= 0.0 {
            return Err(FockError::NotPositiveDefinite);
        }
        let chol = gram
            .clone()
            .cholesky()
            .ok_or(FockError::NotPositiveDefinite)?
            .l();
        let basis = enumerate(d, nmax);
        let index = basis.iter().enumerate().map(|(i, n)| (n.clone(), i)).collect();
        Ok(ModeSpace {
            d,
            nmax,
            gram,
            chol,
            basis,
            index,
        })
    }

    /// Real Gram matrix given row by row.
    pub fn with_real_gram(rows: &[Vec<f64>], nmax: u32) -> Result<Self, FockError> {
        let d = rows.len();
        if rows.iter().any(|r| r.len() != d) {
            return Err(FockError::Shape("gram rows must have equal length".into()));
        }
        let g = DMatrix::from_fn(d, d, |j, k| Complex64::new(rows[j][k], 0.0));
        ModeSpace::with_gram(g, nmax)
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn nmax(&self) -> u32 {
        self.nmax
    }

    pub fn gram(&self) -> &DMatrix<Complex64> {
        &self.gram
    }

    pub fn cholesky(&self) -> &DMatrix<Complex64> {
        &self.chol
    }

    /// `binomial(nmax + d, d)`.
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[FockIndex] {
        &self.basis
    }

    pub fn index_of(&self, n: &[u32]) -> Option<usize> {
        self.index.get(n).copied()
    }

    pub fn vacuum(&self) -> usize {
        0
    }

    pub fn total(&self, i: usize) -> u32 {
        self.basis[i].iter().sum()
    }

    /// Basis states with total occupation at most `nmax - degree`: the
    /// columns on which a word of that degree acts without hitting the cutoff.
    pub fn safe_columns(&self, degree: usize) -> Vec<usize> {
        let limit = self.nmax as i64 - degree as i64;
        (0..self.dim()).filter(|&i| self.total(i) as i64 <= limit).collect()
    }

    /// `<v|w>` through the Gram form.
    pub fn inner(&self, v: &[Complex64], w: &[Complex64]) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for j in 0..self.d {
            for k in 0..self.d {
                acc += v[j].conj() * self.gram[(j, k)] * w[k];
            }
        }
        acc
    }

    /// Orthonormal coordinates `c = L^* v`, so that `<v|w> = c(v)^* c(w)`.
    pub fn coordinates(&self, v: &[Complex64]) -> Vec<Complex64> {
        (0..self.d)
            .map(|m| (0..self.d).map(|j| self.chol[(j, m)].conj() * v[j]).sum())
            .collect()
    }
}

/// All occupation vectors with sum at most `nmax`, ordered by total
/// occupation and then lexicographically descending, so the vacuum is 0.
fn enumerate(d: usize, nmax: u32) -> Vec<FockIndex> {
    let mut out = Vec::new();
    for total in 0..=nmax {
        let mut cur = vec![0u32; d];
        fill(&mut cur, 0, total, &mut out);
    }
    out
}

fn fill(cur: &mut Vec<u32>, pos: usize, left: u32, out: &mut Vec<FockIndex>) {
    if pos + 1 == cur.len() {
        cur[pos] = left;
        out.push(cur.clone());
        return;
    }
    for n in (0..=left).rev() {
        cur[pos] = n;
        fill(cur, pos + 1, left - n, out);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binomial(n: u64, k: u64) -> u64 {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn dimension_is_binomial() {
        for d in 1..4 {
            for nmax in 0..8 {
                let m = ModeSpace::new(d, nmax).unwrap();
                assert_eq!(m.dim() as u64, binomial(nmax as u64 + d as u64, d as u64));
            }
        }
    }

    #[test]
    fn enumeration_is_stable_and_total() {
        let m = ModeSpace::new(3, 4).unwrap();
        assert_eq!(m.basis()[0], vec![0, 0, 0]);
        assert_eq!(m.basis()[1], vec![1, 0, 0]);
        for (i, n) in m.basis().iter().enumerate() {
            assert_eq!(m.index_of(n), Some(i));
        }
        assert_eq!(m.index_of(&[5, 0, 0]), None);
    }

    #[test]
    fn rejects_indefinite_gram() {
        let err = ModeSpace::with_real_gram(&[vec![1.0, 2.0], vec![2.0, 1.0]], 3);
        assert!(matches!(err, Err(FockError::NotPositiveDefinite)));
    }

    #[test]
    fn coordinates_reproduce_gram() {
        let m = ModeSpace::with_real_gram(&[vec![2.0, 0.5], vec![0.5, 1.0]], 2).unwrap();
        let v = [Complex64::new(0.3, 0.0), Complex64::new(-1.1, 0.0)];
        let w = [Complex64::new(0.7, 0.0), Complex64::new(0.2, 0.0)];
        let (cv, cw) = (m.coordinates(&v), m.coordinates(&w));
        let direct: Complex64 = cv.iter().zip(&cw).map(|(a, b)| a.conj() * b).sum();
        assert!((direct - m.inner(&v, &w)).norm() < 1e-14);
    }
}
