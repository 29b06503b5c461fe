//! Gaussian-measure realization at finite dimension: Weyl group, generating
//! functions, quasi-invariance cocycles and the field operators acting on
//! an explicit class of test functions.

mod mc;
mod model;
mod quadrature;
mod testfn;
mod weyl;

use thiserror::Error;

pub use mc::{bochner_mc, positive_definiteness_check, McEstimate, CHUNK};
pub use model::{EtaEstimate, EtaSweep, GaussianModel};
pub use quadrature::{fock_cross_check, gauss_hermite, CrossCheck};
pub use testfn::TestFunction;
pub use weyl::{weyl_compose, RationalGram, WeylElement};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MeasureError {
    #[error("K is not invertible")]
    Singular,
    #[error("shape error: {0}")]
    Shape(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
