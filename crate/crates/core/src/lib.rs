//! Canonical commutation relations and their q-deformed Hopf variants.
//!
//! * [`algebra`]: exact normal ordering over CCR generators.
//! * [`hopf`]: tensor powers, structure maps and a bounded-degree axiom checker.
//! * [`fock`]: truncated Fock-space matrices, Bogoliubov families and spectra.
//! * [`measure`]: the L2-over-Gaussian-measure realization at finite dimension.

pub mod algebra;
pub mod exec;
pub mod fock;
pub mod hopf;
pub mod measure;
pub mod scalar;

pub use exec::Execution;
pub use scalar::Scalar;
