//! Axiom checkers. Each checker assembles residual tensors from the
//! multilinear combinators and returns a [`Report`].

mod center;
mod checks;
mod morphism;
mod report;
mod side;
mod systems;

use thiserror::Error;

use crate::coeff::CoeffError;
use crate::multilinear::MultilinearError;

pub use center::{check_cor_3_12, compute_center, cor_3_12_product, Cor312Outcome};
pub use checks::{
    check_associativity, check_bimodule, check_bimodule_algebra, check_compatible_pair, check_curved_oos,
    check_dendriform_system, check_double_curved_rbs, check_extended_bimodule_algebra, check_generalized_rb,
    check_pre_lie, check_specialization, check_tridendriform_system, specialize, Specialization, SpecializationInput,
};
pub use morphism::check_morphism;
pub use report::{Equation, EquationRole, Mode, Report, Residual, Verdict};
pub use side::{check_pseudotwistor, check_side_condition, SideCondition, SideInput};
pub use systems::{Bimodule, CurvedSystem, DendriformSystem, DoubleSystem};

pub(crate) use report::ReportBuilder;
pub(crate) use systems::expect_lin;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error(transparent)]
    Multilinear(#[from] MultilinearError),
    #[error("role `{0}` is required but not bound")]
    MissingRole(String),
    #[error("a TD-algebra check needs a declared unit element")]
    MissingUnit,
    #[error("declared unit is not a two-sided unit: {0}")]
    BadUnit(String),
    #[error("{0} needs a base field of characteristic other than 2")]
    CharacteristicTwo(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

impl From<CoeffError> for StructureError {
    fn from(e: CoeffError) -> Self {
        StructureError::Multilinear(e.into())
    }
}

pub type Result<T> = std::result::Result<T, StructureError>;
