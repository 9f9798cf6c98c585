//! The twining of U(g) by a central element K: preconditions on K, the
//! twined operators and the pre-monoidal morphisms they define.

pub mod central;
pub mod data;
pub mod object;

pub use central::{antipode_matrix, validate_central, CentralElement, Requirement, SParity, ValidationIssue, ValidationReport};
pub use data::{kappa_element, QMethod, TwinedData};
pub use object::{Morphism, Obj};

use crate::algebra::AlgebraError;
use crate::linalg::SpectrumError;

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum TwinedError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("on ({context}): {source}")]
    Spectrum { context: String, source: SpectrumError },
    #[error("cannot compose: expected source {expected}, found {found}")]
    Composition { expected: String, found: String },
    #[error("morphism on {0} is not invertible")]
    Singular(String),
    #[error("gamma must be nonzero")]
    ZeroGamma,
}

impl TwinedError {
    /// Stable identifier used in reports.
    pub fn code(&self) -> &'static str {
        match self {
            TwinedError::Algebra(_) => "AlgebraError",
            TwinedError::Spectrum { source, .. } => source.code(),
            TwinedError::Composition { .. } => "CompositionMismatch",
            TwinedError::Singular(_) => "Singular",
            TwinedError::ZeroGamma => "ZeroGamma",
        }
    }
}
