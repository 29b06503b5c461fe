//! Exact noncommutative polynomial arithmetic over CCR generators and
//! confluent normal ordering for the undeformed and deformed algebras.

mod deformation;
mod expr;
mod generator;
mod numeric;
mod presentation;
mod rewrite;

use thiserror::Error;

pub use deformation::{
    deformation_constant, deformation_constant_with_threshold, half_power,
    DEFAULT_LIMIT_THRESHOLD,
};
pub use expr::Expr;
pub use generator::{Basis, Generator, Word};
pub use numeric::{evaluate_numeric, NumExpr};
pub use presentation::{Deformation, Gram, Presentation, Variant};
pub use rewrite::{
    adjoint, basis_convert, commutator, expand_k, normal_form, normal_form_with, Reducer,
    Schedule,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AlgebraError {
    #[error("generator {generator} is not part of the {variant:?} presentation")]
    IllegalGenerator { generator: Generator, variant: Variant },
    #[error("gram form is not Hermitian at ({j}, {k})")]
    NonHermitianGram { j: usize, k: usize },
    #[error("gram matrix must be square")]
    GramShape,
    #[error("{name} must be strictly positive, got {value}")]
    NonPositive { name: &'static str, value: f64 },
    #[error("{op} is not defined for the {variant:?} variant")]
    WrongVariant { op: &'static str, variant: Variant },
}
