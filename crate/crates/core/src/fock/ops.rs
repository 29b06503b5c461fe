use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::space::ModeSpace;
use super::sparse::SparseOperator;
use super::FockError;
use crate::algebra::{deformation_constant, Expr, Generator, Presentation};
use crate::scalar::{KAPPA, S};

const SQRT_HALF: f64 = std::f64::consts::FRAC_1_SQRT_2;

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// Creation and annihilation matrices, one pair per mode.
#[derive(Clone, Debug)]
pub struct Ladder {
    pub plus: Vec<SparseOperator>,
    pub minus: Vec<SparseOperator>,
}

impl Ladder {
    /// `b-(v) = sum_m conj(c_m) b-_m`, `b+(v) = sum_m c_m b+_m` with
    /// `c = L^* v` the orthonormal coordinates of `v`.
    pub fn along(&self, m: &ModeSpace, v: &[Complex64]) -> (SparseOperator, SparseOperator) {
        let c = m.coordinates(v);
        let mut plus = SparseOperator::zero(m.dim());
        let mut minus = SparseOperator::zero(m.dim());
        for (k, ck) in c.iter().enumerate() {
            plus = &plus + &self.plus[k].scale(*ck);
            minus = &minus + &self.minus[k].scale(ck.conj());
        }
        (plus, minus)
    }
}

/// Standard ladder action on orthonormal modes: `a-_k|n> = sqrt(n_k)|n-e_k>`,
/// `a+_k|n> = sqrt(n_k+1)|n+e_k>`, states above the cutoff dropped.
pub fn orthonormal_ladder(m: &ModeSpace) -> Ladder {
    let mut plus = Vec::with_capacity(m.d());
    let mut minus = Vec::with_capacity(m.d());
    for k in 0..m.d() {
        let mut entries = Vec::new();
        for (col, n) in m.basis().iter().enumerate() {
            let mut up = n.clone();
            up[k] += 1;
            if let Some(row) = m.index_of(&up) {
                entries.push((row, col, re(f64::from(up[k]).sqrt())));
            }
        }
        let ap = SparseOperator::from_triplets(m.dim(), entries);
        minus.push(ap.adjoint());
        plus.push(ap);
    }
    Ladder { plus, minus }
}

/// `a+(v_j)`, `a-(v_j)` for the mode vectors, whose inner products are the
/// Gram entries: `a-(v_j) = sum_m L_jm a-_m`.
pub fn ladder_matrices(m: &ModeSpace) -> Ladder {
    let base = orthonormal_ladder(m);
    let mut plus = Vec::with_capacity(m.d());
    let mut minus = Vec::with_capacity(m.d());
    for j in 0..m.d() {
        let mut e = vec![re(0.0); m.d()];
        e[j] = re(1.0);
        let (p, mi) = base.along(m, &e);
        plus.push(p);
        minus.push(mi);
    }
    Ladder { plus, minus }
}

#[derive(Clone, Debug)]
pub struct PhiPi {
    pub phi: Vec<SparseOperator>,
    pub pi: Vec<SparseOperator>,
}

/// `phi = (a+ + a-)/sqrt2`, `pi = i(a+ - a-)/sqrt2`.
pub fn phi_pi_from(ladder: &Ladder) -> PhiPi {
    let (phi, pi) = ladder
        .plus
        .iter()
        .zip(&ladder.minus)
        .map(|(p, mi)| {
            let phi = (p + mi).scale(re(SQRT_HALF));
            let pi = (p - mi).scale(Complex64::new(0.0, SQRT_HALF));
            (phi, pi)
        })
        .unzip();
    PhiPi { phi, pi }
}

pub fn phi_pi_matrices(m: &ModeSpace) -> PhiPi {
    phi_pi_from(&ladder_matrices(m))
}

/// `phi(v)`, `pi(v)` for an arbitrary mode vector.
pub fn phi_pi_along(m: &ModeSpace, ladder: &Ladder, v: &[Complex64]) -> (SparseOperator, SparseOperator) {
    let (p, mi) = ladder.along(m, v);
    let phi = (&p + &mi).scale(re(SQRT_HALF));
    let pi = (&p - &mi).scale(Complex64::new(0.0, SQRT_HALF));
    (phi, pi)
}

/// Per-mode squeezing `r_j`, with `gamma = exp(-2r)` and `c^2 = exp(2r)/2`.
/// `r = 0` is the Fock point `gamma = 1`, `c^2 = 1/2`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BogoliubovSpec {
    pub r: Vec<f64>,
}

impl BogoliubovSpec {
    pub fn fock(d: usize) -> Self {
        BogoliubovSpec { r: vec![0.0; d] }
    }

    pub fn uniform(d: usize, r: f64) -> Self {
        BogoliubovSpec { r: vec![r; d] }
    }

    /// `r_j = r 2^-j`, a family with summable `sinh^2 r_j`.
    pub fn summable(d: usize, r: f64) -> Self {
        BogoliubovSpec {
            r: (0..d).map(|j| r * 0.5f64.powi(j as i32)).collect(),
        }
    }

    pub fn from_gamma(gamma: &[f64]) -> Result<Self, FockError> {
        let r = gamma
            .iter()
            .map(|&g| {
                if g > 0.0 && g.is_finite() {
                    Ok(-0.5 * g.ln())
                } else {
                    Err(FockError::InvalidSpec(format!("gamma must be positive, got {g}")))
                }
            })
            .collect::<Result<_, _>>()?;
        Ok(BogoliubovSpec { r })
    }

    /// Generating-function parameter `c` of `Z_c(v) = exp(-c^2 <v|v>/2)`,
    /// uniform over `d` modes: `r = ln(2c^2)/2`.
    pub fn from_c(d: usize, c: f64) -> Result<Self, FockError> {
        if !(c > 0.0 && c.is_finite()) {
            return Err(FockError::InvalidSpec(format!("c must be positive, got {c}")));
        }
        Ok(BogoliubovSpec::uniform(d, 0.5 * (2.0 * c * c).ln()))
    }

    pub fn gamma(&self) -> Vec<f64> {
        self.r.iter().map(|r| (-2.0 * r).exp()).collect()
    }

    pub fn c_squared(&self) -> Vec<f64> {
        self.r.iter().map(|r| 0.5 * (2.0 * r).exp()).collect()
    }

    pub fn is_fock(&self) -> bool {
        self.r.iter().all(|&r| r == 0.0)
    }

    /// `sum_j sinh^2 r_j`: the vacuum expectation of the transformed
    /// number operator.
    pub fn vacuum_number(&self) -> f64 {
        self.r.iter().map(|r| r.sinh().powi(2)).sum()
    }

    fn check(&self, m: &ModeSpace) -> Result<(), FockError> {
        if self.r.len() != m.d() {
            return Err(FockError::InvalidSpec(format!(
                "{} squeezing parameters for {} modes",
                self.r.len(),
                m.d()
            )));
        }
        if let Some(r) = self.r.iter().find(|r| !r.is_finite()) {
            return Err(FockError::InvalidSpec(format!("squeezing must be finite, got {r}")));
        }
        Ok(())
    }
}

/// `b-_j = cosh(r_j) a-_j + sinh(r_j) a+_j` on orthonormal modes,
/// `b+_j` its adjoint. `r = 0` returns the Fock ladder unchanged.
pub fn bogoliubov_ladder(m: &ModeSpace, spec: &BogoliubovSpec) -> Result<Ladder, FockError> {
    spec.check(m)?;
    let a = orthonormal_ladder(m);
    let mut plus = Vec::with_capacity(m.d());
    let mut minus = Vec::with_capacity(m.d());
    for (j, &r) in spec.r.iter().enumerate() {
        if r == 0.0 {
            plus.push(a.plus[j].clone());
            minus.push(a.minus[j].clone());
            continue;
        }
        let bm = &a.minus[j].scale(re(r.cosh())) + &a.plus[j].scale(re(r.sinh()));
        plus.push(bm.adjoint());
        minus.push(bm);
    }
    Ok(Ladder { plus, minus })
}

/// `N = sum_j b+_j b-_j` over orthonormal modes; the Fock number operator
/// when `spec` is `None`.
pub fn number_operator(m: &ModeSpace, spec: Option<&BogoliubovSpec>) -> Result<SparseOperator, FockError> {
    let ladder = match spec {
        Some(s) => bogoliubov_ladder(m, s)?,
        None => orthonormal_ladder(m),
    };
    Ok(number_from(&ladder, m.dim()))
}

pub fn number_from(ladder: &Ladder, dim: usize) -> SparseOperator {
    ladder
        .plus
        .iter()
        .zip(&ladder.minus)
        .fold(SparseOperator::zero(dim), |acc, (p, mi)| &acc + &(p * mi))
}

/// Fields of the transferred representation: `phi` unchanged, `pi` scaled
/// by the deformation constant.
#[derive(Clone, Debug)]
pub struct TransferRep {
    pub constant: f64,
    pub phi: Vec<SparseOperator>,
    pub pi: Vec<SparseOperator>,
}

pub fn transfer_rep(m: &ModeSpace, q: f64, c: f64) -> Result<TransferRep, FockError> {
    let constant = deformation_constant(q, c)?;
    let PhiPi { phi, pi } = phi_pi_matrices(m);
    let pi = pi.iter().map(|p| p.scale(re(constant))).collect();
    Ok(TransferRep { constant, phi, pi })
}

/// Matrix representation of the algebra on a truncated Fock space:
/// `phi(j) -> phi(v_j)`, `pi(j) -> kappa pi(v_j)`,
/// `ap(j) -> (phi - i kappa pi)/sqrt2`, `am(j) -> (phi + i kappa pi)/sqrt2`,
/// `I -> 1`, `K -> s`, `Kinv -> 1/s`. With `kappa = s = 1` this is the Fock
/// representation of the undeformed algebra.
#[derive(Clone, Debug)]
pub struct FockRepresentation {
    space: ModeSpace,
    kappa: f64,
    s: f64,
    phi: Vec<SparseOperator>,
    pi: Vec<SparseOperator>,
    ap: Vec<SparseOperator>,
    am: Vec<SparseOperator>,
}

impl FockRepresentation {
    pub fn new(space: ModeSpace, kappa: f64, s: f64) -> Result<Self, FockError> {
        if !(kappa > 0.0 && s > 0.0) {
            return Err(FockError::InvalidSpec(format!(
                "kappa and s must be positive, got {kappa}, {s}"
            )));
        }
        let PhiPi { phi, pi } = phi_pi_matrices(&space);
        let pi: Vec<_> = pi.iter().map(|p| p.scale(re(kappa))).collect();
        let (ap, am) = phi
            .iter()
            .zip(&pi)
            .map(|(f, p)| {
                let ip = p.scale(Complex64::new(0.0, 1.0));
                ((f - &ip).scale(re(SQRT_HALF)), (f + &ip).scale(re(SQRT_HALF)))
            })
            .unzip();
        Ok(FockRepresentation {
            space,
            kappa,
            s,
            phi,
            pi,
            ap,
            am,
        })
    }

    pub fn undeformed(space: ModeSpace) -> Self {
        FockRepresentation::new(space, 1.0, 1.0).expect("unit parameters")
    }

    /// Uses the presentation's numeric deformation, or `kappa`, `s` from
    /// `symbolic` when it is symbolic.
    pub fn for_presentation(space: ModeSpace, p: &Presentation, symbolic: (f64, f64)) -> Result<Self, FockError> {
        let assignment = BTreeMap::from([(KAPPA.to_string(), symbolic.0), (S.to_string(), symbolic.1)]);
        let kappa = p.kappa().eval(&assignment)?.re;
        let s = p.s().eval(&assignment)?.re;
        FockRepresentation::new(space, kappa, s)
    }

    pub fn space(&self) -> &ModeSpace {
        &self.space
    }

    pub fn parameters(&self) -> BTreeMap<String, f64> {
        BTreeMap::from([(KAPPA.to_string(), self.kappa), (S.to_string(), self.s)])
    }

    pub fn generator(&self, g: Generator) -> Result<SparseOperator, FockError> {
        let n = self.space.dim();
        let mode = |j: u32| -> Result<usize, FockError> {
            let j = j as usize;
            if j < self.space.d() {
                Ok(j)
            } else {
                Err(FockError::ModeOutOfRange { mode: j, d: self.space.d() })
            }
        };
        Ok(match g {
            Generator::I => SparseOperator::identity(n),
            Generator::K => SparseOperator::identity(n).scale(re(self.s)),
            Generator::Kinv => SparseOperator::identity(n).scale(re(1.0 / self.s)),
            Generator::Phi(j) => self.phi[mode(j)?].clone(),
            Generator::Pi(j) => self.pi[mode(j)?].clone(),
            Generator::APlus(j) => self.ap[mode(j)?].clone(),
            Generator::AMinus(j) => self.am[mode(j)?].clone(),
        })
    }

    pub fn represent(&self, e: &Expr) -> Result<SparseOperator, FockError> {
        let params = self.parameters();
        let n = self.space.dim();
        let mut out = SparseOperator::zero(n);
        for (w, c) in e.terms() {
            let c = c.eval(&params)?;
            let mut acc = SparseOperator::identity(n).scale(c);
            for &g in w.letters() {
                acc = &acc * &self.generator(g)?;
            }
            out = &out + &acc;
        }
        Ok(out)
    }
}

/// Numeric Gram matrix of a presentation restricted to `d` modes.
pub fn presentation_space(p: &Presentation, d: usize, nmax: u32) -> Result<ModeSpace, FockError> {
    let empty = BTreeMap::new();
    let mut g = nalgebra::DMatrix::zeros(d, d);
    for j in 0..d {
        for k in 0..d {
            g[(j, k)] = p.gram_entry(j as u32, k as u32).eval(&empty)?;
        }
    }
    ModeSpace::with_gram(g, nmax)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{normal_form, Generator::*};

    fn e(d: usize, j: usize) -> Vec<Complex64> {
        let mut v = vec![re(0.0); d];
        v[j] = re(1.0);
        v
    }

    #[test]
    fn single_mode_ladder_entries() {
        let m = ModeSpace::new(1, 2).unwrap();
        let a = orthonormal_ladder(&m);
        assert_eq!(a.minus[0].get(0, 1), re(1.0));
        assert_eq!(a.minus[0].get(1, 2), re(2f64.sqrt()));
        assert_eq!(a.minus[0].nnz(), 2);
    }

    #[test]
    fn ccr_on_safe_subspace_with_gram() {
        let m = ModeSpace::with_real_gram(&[vec![2.0, 0.3], vec![0.3, 1.0]], 8).unwrap();
        let l = ladder_matrices(&m);
        let safe = m.safe_columns(2);
        for j in 0..2 {
            for k in 0..2 {
                let comm = l.minus[j].commutator(&l.plus[k]);
                let target = SparseOperator::identity(m.dim()).scale(m.gram()[(j, k)]);
                assert!((&comm - &target).norm_on_columns(&safe) < 1e-12);
            }
        }
    }

    #[test]
    fn vacuum_is_annihilated() {
        let m = ModeSpace::new(2, 5).unwrap();
        let l = orthonormal_ladder(&m);
        let (_, am) = l.along(&m, &[Complex64::new(0.4, -0.2), re(1.3)]);
        let mut vac = vec![re(0.0); m.dim()];
        vac[m.vacuum()] = re(1.0);
        assert!(am.apply(&vac).iter().all(|x| x.norm() == 0.0));
    }

    #[test]
    fn phi_matches_oscillator_position() {
        // independent construction: x = (a + a^T)/sqrt2 with a_{n-1,n} = sqrt(n)
        let m = ModeSpace::new(1, 6).unwrap();
        let phi = &phi_pi_matrices(&m).phi[0];
        for row in 0..7usize {
            for col in 0..7usize {
                let expected = if row + 1 == col {
                    (col as f64 / 2.0).sqrt()
                } else if col + 1 == row {
                    (row as f64 / 2.0).sqrt()
                } else {
                    0.0
                };
                assert!((phi.get(row, col) - re(expected)).norm() < 1e-15);
            }
        }
        assert!(phi.hermiticity_defect() < 1e-14);
        assert!(phi_pi_matrices(&m).pi[0].hermiticity_defect() < 1e-14);
    }

    #[test]
    fn number_operator_commutes_as_ladder_grading() {
        let m = ModeSpace::new(2, 6).unwrap();
        let n = number_operator(&m, None).unwrap();
        let l = orthonormal_ladder(&m);
        let (ap, _) = l.along(&m, &[re(0.6), re(-0.8)]);
        let resid = &n.commutator(&ap) - &ap;
        assert!(resid.norm_on_columns(&m.safe_columns(1)) < 1e-10);
    }

    #[test]
    fn bogoliubov_preserves_ccr() {
        let m = ModeSpace::new(2, 10).unwrap();
        let spec = BogoliubovSpec { r: vec![0.7, -0.4] };
        let b = bogoliubov_ladder(&m, &spec).unwrap();
        let safe = m.safe_columns(2);
        for j in 0..2 {
            for k in 0..2 {
                let comm = b.minus[j].commutator(&b.plus[k]);
                let target = if j == k { SparseOperator::identity(m.dim()) } else { SparseOperator::zero(m.dim()) };
                assert!((&comm - &target).norm_on_columns(&safe) < 1e-10);
            }
        }
        let fock = bogoliubov_ladder(&m, &BogoliubovSpec::fock(2)).unwrap();
        assert_eq!(fock.minus[1], orthonormal_ladder(&m).minus[1]);
    }

    #[test]
    fn spec_parameterizations_agree() {
        let s = BogoliubovSpec::from_c(1, 1.0).unwrap();
        assert!((s.r[0] - 0.5 * 2f64.ln()).abs() < 1e-15);
        assert!((s.gamma()[0] - 0.5).abs() < 1e-15);
        assert!((s.c_squared()[0] - 1.0).abs() < 1e-15);
        assert!(BogoliubovSpec::from_c(1, SQRT_HALF).unwrap().r[0].abs() < 1e-15);
        let g = BogoliubovSpec::from_gamma(&[0.5]).unwrap();
        assert!((g.r[0] - s.r[0]).abs() < 1e-15);
        assert!((s.vacuum_number() - 0.125).abs() < 1e-15);
    }

    #[test]
    fn transfer_scales_ccr() {
        let m = ModeSpace::new(2, 8).unwrap();
        let t = transfer_rep(&m, 1.7, 2.2).unwrap();
        let comm = t.pi[0].commutator(&t.phi[0]);
        let target = SparseOperator::identity(m.dim()).scale(Complex64::new(0.0, -t.constant));
        assert!((&comm - &target).norm_on_columns(&m.safe_columns(2)) < 1e-12);
        let same = transfer_rep(&m, 3.0, 1.0).unwrap();
        assert_eq!(same.pi, phi_pi_matrices(&m).pi);
    }

    #[test]
    fn representation_respects_normal_form() {
        let p = Presentation::undeformed();
        let m = ModeSpace::new(2, 7).unwrap();
        let rep = FockRepresentation::undeformed(m);
        let e = &Expr::product(&[AMinus(1), Pi(0), APlus(1)]) + &Expr::product(&[Pi(1), Phi(1)]);
        let lhs = rep.represent(&e).unwrap();
        let rhs = rep.represent(&normal_form(&e, &p).unwrap()).unwrap();
        assert!((&lhs - &rhs).norm_on_columns(&rep.space().safe_columns(3)) < 1e-10);
    }

    #[test]
    fn mode_vectors_follow_gram() {
        let m = ModeSpace::with_real_gram(&[vec![1.5, -0.2], vec![-0.2, 0.9]], 5).unwrap();
        let l = orthonormal_ladder(&m);
        let direct = ladder_matrices(&m);
        let (ap, _) = l.along(&m, &e(2, 1));
        assert_eq!(ap, direct.plus[1]);
    }
}
