//! Coproduct, counit and antipode on the CCR algebras, tensor powers, and
//! a bounded-degree checker for the bialgebra and Hopf axioms.

mod check;
mod maps;
mod tensor;

use thiserror::Error;

use crate::algebra::{AlgebraError, Generator};

pub use check::{
    check_antipode, check_coassociativity, check_counit, check_multiplicativity,
    check_respects_relations, cocommutativity_probe, defining_relations, AxiomChecker,
    AxiomReport, CheckWindow, Counterexample, Residual, Status,
};
pub use maps::{antipode, coproduct, counit, Flavor, HopfSpec};
pub use tensor::TensorExpr;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum HopfError {
    #[error("generator {generator} is not covered by the {flavor:?} Hopf structure")]
    Uncovered { generator: Generator, flavor: Flavor },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}
