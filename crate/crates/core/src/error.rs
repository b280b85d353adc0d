use thiserror::Error;

use crate::eigenbases::BasisLabel;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// One or more denominator expressions vanish at the given parameters.
    #[error("degenerate parameters: {}", .0.join(", "))]
    DegenerateParameters(Vec<String>),

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    /// The homogeneous system for a basis vector did not have a
    /// one-dimensional solution space.
    #[error("basis {label:?}, index {index}: nullspace has dimension {dimension}, expected 1")]
    NondegenerateSpectrumViolated {
        label: BasisLabel,
        index: usize,
        dimension: usize,
    },

    /// Two routes to the same quantity disagreed.
    #[error("identity mismatch in {what}: {left} != {right}")]
    Mismatch {
        what: String,
        left: String,
        right: String,
    },

    #[error("matrix is singular")]
    Singular,

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn is_degenerate(&self) -> bool {
        matches!(self, Error::DegenerateParameters(_) | Error::Singular)
    }
}
