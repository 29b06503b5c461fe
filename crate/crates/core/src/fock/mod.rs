//! Truncated Fock-space realizations: ladder and field matrices, Bogoliubov
//! families, spectra, vacuum generating functions and the deformation
//! transfer map.

mod genfun;
mod ops;
mod space;
mod sparse;
mod spectrum;

use thiserror::Error;

use crate::algebra::AlgebraError;
use crate::scalar::ScalarError;

pub use genfun::{expm_apply, truncation_sweep, vacuum_generating_function, TruncationPoint};
pub use ops::{
    bogoliubov_ladder, ladder_matrices, number_from, number_operator, orthonormal_ladder,
    phi_pi_along, phi_pi_from, phi_pi_matrices, presentation_space, transfer_rep,
    BogoliubovSpec, FockRepresentation, Ladder, PhiPi, TransferRep,
};
pub use space::{FockIndex, ModeSpace};
pub use sparse::SparseOperator;
pub use spectrum::{
    boundedness_trend, lowest_eigenvalues, spectrum, vacuum_expectation, Family, SpectrumReport,
    TrendPoint, TrendReport, DENSE_LIMIT,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FockError {
    #[error("gram matrix is not Hermitian positive definite")]
    NotPositiveDefinite,
    #[error("shape error: {0}")]
    Shape(String),
    #[error("invalid Bogoliubov spec: {0}")]
    InvalidSpec(String),
    #[error("mode {mode} outside the window of {d} modes")]
    ModeOutOfRange { mode: usize, d: usize },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}
