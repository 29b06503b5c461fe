use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::DMatrix;
use num_complex::Complex64;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Square complex matrix in row-compressed form; each row is sorted by
/// column and holds no explicit zeros.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseOperator {
    n: usize,
    rows: Vec<Vec<(usize, Complex64)>>,
}

impl SparseOperator {
    pub fn zero(n: usize) -> Self {
        SparseOperator {
            n,
            rows: vec![Vec::new(); n],
        }
    }

    pub fn identity(n: usize) -> Self {
        SparseOperator::diagonal(&vec![Complex64::new(1.0, 0.0); n])
    }

    pub fn diagonal(diag: &[Complex64]) -> Self {
        SparseOperator::from_triplets(diag.len(), diag.iter().enumerate().map(|(i, &x)| (i, i, x)))
    }

    /// Duplicate entries are summed.
    pub fn from_triplets<I>(n: usize, entries: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize, Complex64)>,
    {
        let mut acc: Vec<BTreeMap<usize, Complex64>> = vec![BTreeMap::new(); n];
        for (i, j, x) in entries {
            assert!(i < n && j < n, "entry ({i}, {j}) outside {n}x{n}");
            *acc[i].entry(j).or_insert(ZERO) += x;
        }
        SparseOperator {
            n,
            rows: acc
                .into_iter()
                .map(|r| r.into_iter().filter(|(_, x)| *x != ZERO).collect())
                .collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn row(&self, i: usize) -> &[(usize, Complex64)] {
        &self.rows[i]
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        match self.rows[i].binary_search_by_key(&j, |&(c, _)| c) {
            Ok(k) => self.rows[i][k].1,
            Err(_) => ZERO,
        }
    }

    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, Complex64)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(i, r)| r.iter().map(move |&(j, x)| (i, j, x)))
    }

    pub fn scale(&self, c: Complex64) -> SparseOperator {
        SparseOperator::from_triplets(self.n, self.triplets().map(|(i, j, x)| (i, j, c * x)))
    }

    pub fn adjoint(&self) -> SparseOperator {
        SparseOperator::from_triplets(self.n, self.triplets().map(|(i, j, x)| (j, i, x.conj())))
    }

    pub fn commutator(&self, other: &SparseOperator) -> SparseOperator {
        &(self * other) - &(other * self)
    }

    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(v.len(), self.n);
        self.rows
            .iter()
            .map(|r| r.iter().map(|&(j, x)| x * v[j]).sum())
            .collect()
    }

    pub fn to_dense(&self) -> DMatrix<Complex64> {
        let mut m = DMatrix::zeros(self.n, self.n);
        for (i, j, x) in self.triplets() {
            m[(i, j)] = x;
        }
        m
    }

    /// Frobenius norm of the columns listed in `cols`.
    pub fn norm_on_columns(&self, cols: &[usize]) -> f64 {
        let mut keep = vec![false; self.n];
        for &c in cols {
            keep[c] = true;
        }
        self.triplets()
            .filter(|&(_, j, _)| keep[j])
            .map(|(_, _, x)| x.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn norm(&self) -> f64 {
        self.triplets().map(|(_, _, x)| x.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Upper bound on the spectral norm: the largest absolute row sum.
    pub fn norm_inf(&self) -> f64 {
        self.rows
            .iter()
            .map(|r| r.iter().map(|(_, x)| x.norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    /// `||M - M^*||_F`.
    pub fn hermiticity_defect(&self) -> f64 {
        (self - &self.adjoint()).norm()
    }

    fn combine(&self, other: &SparseOperator, sign: f64) -> SparseOperator {
        assert_eq!(self.n, other.n, "dimension mismatch");
        SparseOperator::from_triplets(
            self.n,
            self.triplets()
                .chain(other.triplets().map(|(i, j, x)| (i, j, x * sign))),
        )
    }
}

impl<'a> Add<&'a SparseOperator> for &'a SparseOperator {
    type Output = SparseOperator;
    fn add(self, rhs: &SparseOperator) -> SparseOperator {
        self.combine(rhs, 1.0)
    }
}

impl<'a> Sub<&'a SparseOperator> for &'a SparseOperator {
    type Output = SparseOperator;
    fn sub(self, rhs: &SparseOperator) -> SparseOperator {
        self.combine(rhs, -1.0)
    }
}

impl Neg for &SparseOperator {
    type Output = SparseOperator;
    fn neg(self) -> SparseOperator {
        self.scale(Complex64::new(-1.0, 0.0))
    }
}

impl<'a> Mul<&'a SparseOperator> for &'a SparseOperator {
    type Output = SparseOperator;
    fn mul(self, rhs: &SparseOperator) -> SparseOperator {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let mut acc: BTreeMap<usize, Complex64> = BTreeMap::new();
                for &(k, x) in r {
                    for &(j, y) in &rhs.rows[k] {
                        *acc.entry(j).or_insert(ZERO) += x * y;
                    }
                }
                acc.into_iter().filter(|(_, x)| *x != ZERO).collect()
            })
            .collect();
        SparseOperator { n: self.n, rows }
    }
}
