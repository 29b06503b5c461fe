use serde::{Deserialize, Serialize};

use super::deformation::{check_positive, deformation_constant, half_power};
use super::expr::Expr;
use super::generator::{Basis, Generator, Word};
use super::AlgebraError;
use crate::scalar::Scalar;

/// Which quotient of the tensor algebra is in force.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Variant {
    /// Heisenberg CCR, effective deformation constant 1.
    Undeformed,
    /// Deformed relations with central group-like `K = q^{cI/2}` and
    /// `Kinv` kept as generators.
    DeformedStrict,
    /// Deformed relations with `K`, `Kinv` eliminated through `I^2 = I`.
    DeformedCollapsed,
}

impl Variant {
    pub fn is_deformed(self) -> bool {
        !matches!(self, Variant::Undeformed)
    }
}

/// Deformation data: either the free parameters `kappa` and `s`, or
/// numeric `(q, c)` from which both are computed.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Deformation {
    Symbolic,
    Numeric { q: f64, c: f64 },
}

/// Hermitian form on the mode basis. Indices outside an explicit matrix
/// fall back to the Kronecker delta.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub enum Gram {
    #[default]
    Identity,
    Matrix(Vec<Vec<Scalar>>),
}

impl Gram {
    pub fn matrix(rows: Vec<Vec<Scalar>>) -> Result<Gram, AlgebraError> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(AlgebraError::GramShape);
        }
        for j in 0..n {
            for k in 0..=j {
                if rows[j][k] != rows[k][j].conj() {
                    return Err(AlgebraError::NonHermitianGram { j, k });
                }
            }
        }
        Ok(Gram::Matrix(rows))
    }

    pub fn entry(&self, j: u32, k: u32) -> Scalar {
        let (j, k) = (j as usize, k as usize);
        match self {
            Gram::Matrix(m) if j < m.len() && k < m.len() => m[j][k].clone(),
            _ if j == k => Scalar::one(),
            _ => Scalar::zero(),
        }
    }
}

/// Generator set, Gram form, deformation data and variant flags.
#[derive(Clone, Debug, PartialEq)]
pub struct Presentation {
    variant: Variant,
    basis: Basis,
    deformation: Deformation,
    gram: Gram,
    idempotent_unit: bool,
}

impl Presentation {
    /// Defaults: phi-pi basis, symbolic deformation, identity Gram form.
    /// The relation `I*I = I` is imposed in the undeformed and collapsed
    /// variants and not in the strict one.
    pub fn new(variant: Variant) -> Self {
        Presentation {
            variant,
            basis: Basis::PhiPi,
            deformation: Deformation::Symbolic,
            gram: Gram::Identity,
            idempotent_unit: !matches!(variant, Variant::DeformedStrict),
        }
    }

    pub fn undeformed() -> Self {
        Presentation::new(Variant::Undeformed)
    }

    pub fn strict() -> Self {
        Presentation::new(Variant::DeformedStrict)
    }

    pub fn collapsed() -> Self {
        Presentation::new(Variant::DeformedCollapsed)
    }

    pub fn with_basis(mut self, basis: Basis) -> Self {
        self.basis = basis;
        self
    }

    pub fn with_gram(mut self, gram: Gram) -> Self {
        self.gram = gram;
        self
    }

    pub fn with_idempotent_unit(mut self, on: bool) -> Self {
        self.idempotent_unit = on;
        self
    }

    pub fn with_numeric(mut self, q: f64, c: f64) -> Result<Self, AlgebraError> {
        check_positive("q", q)?;
        check_positive("c", c)?;
        self.deformation = Deformation::Numeric { q, c };
        Ok(self)
    }

    pub fn with_symbolic(mut self) -> Self {
        self.deformation = Deformation::Symbolic;
        self
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn deformation(&self) -> Deformation {
        self.deformation
    }

    pub fn gram(&self) -> &Gram {
        &self.gram
    }

    pub fn idempotent_unit(&self) -> bool {
        self.idempotent_unit
    }

    pub fn gram_entry(&self, j: u32, k: u32) -> Scalar {
        self.gram.entry(j, k)
    }

    /// Effective deformation constant: `1` undeformed, `kappa` symbolic,
    /// the exact rational value of `C_{q,c}` numerically.
    pub fn kappa(&self) -> Scalar {
        match (self.variant, self.deformation) {
            (Variant::Undeformed, _) => Scalar::one(),
            (_, Deformation::Symbolic) => Scalar::kappa(),
            (_, Deformation::Numeric { q, c }) => {
                Scalar::from_f64(deformation_constant(q, c).expect("validated"))
            }
        }
    }

    /// Value standing for `q^{c/2}`.
    pub fn s(&self) -> Scalar {
        match (self.variant, self.deformation) {
            (Variant::Undeformed, _) => Scalar::one(),
            (_, Deformation::Symbolic) => Scalar::s(),
            (_, Deformation::Numeric { q, c }) => {
                Scalar::from_f64(half_power(q, c).expect("validated"))
            }
        }
    }

    /// `K` is identically `1` when the deformation is numeric with `q^{c/2} = 1`.
    pub(crate) fn k_is_trivial(&self) -> bool {
        matches!(self.deformation, Deformation::Numeric { .. }) && self.s().is_one()
    }

    pub fn is_legal(&self, g: Generator) -> bool {
        match g {
            Generator::K | Generator::Kinv => self.variant.is_deformed(),
            _ => true,
        }
    }

    /// Right-hand side `U` of the CCR written as `[a-(j), a+(k)] = gram(j,k) U`
    /// and `[pi(j), phi(k)] = -i gram(j,k) U`.
    ///
    /// Undeformed: `U = I`. Collapsed: `U = kappa I`. Strict:
    /// `U = kappa (K^2 - Kinv^2) / (s^2 - s^-2)`, which collapses to
    /// `kappa I` under `K -> 1 + (s-1) I`.
    pub fn ccr_unit(&self) -> Expr {
        match self.variant {
            Variant::Undeformed => Expr::gen(Generator::I),
            Variant::DeformedCollapsed => Expr::gen(Generator::I).scale(&self.kappa()),
            Variant::DeformedStrict if self.k_is_trivial() => {
                Expr::gen(Generator::I).scale(&self.kappa())
            }
            Variant::DeformedStrict => {
                let s = self.s();
                let s2 = &s * &s;
                let width = &s2 - &s2.inv().expect("s nonzero");
                let coeff = &self.kappa() / &width;
                let kk = Expr::word(Word(vec![Generator::K, Generator::K]));
                let kiki = Expr::word(Word(vec![Generator::Kinv, Generator::Kinv]));
                (&kk - &kiki).scale(&coeff)
            }
        }
    }

    /// Image of `K` and `Kinv` when they are eliminated, `None` when they
    /// are kept as generators.
    pub fn k_substitution(&self, g: Generator) -> Option<Expr> {
        let eliminate = match self.variant {
            Variant::DeformedCollapsed => true,
            Variant::DeformedStrict => self.k_is_trivial(),
            Variant::Undeformed => false,
        };
        if !eliminate {
            return None;
        }
        let s = self.s();
        let shift = match g {
            Generator::K => &s - &Scalar::one(),
            Generator::Kinv => &s.inv().expect("s nonzero") - &Scalar::one(),
            _ => return None,
        };
        Some(&Expr::one() + &Expr::gen(Generator::I).scale(&shift))
    }
}
