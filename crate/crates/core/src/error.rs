use std::fmt;

use thiserror::Error;

use crate::pid::Ring;

/// Errors raised by the library. Every variant corresponds to a rejected
/// input; internal invariant violations panic instead.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain mismatch: {0} vs {1}")]
    DomainMismatch(Ring, Ring),
    #[error("{0} is zero or a unit and cannot be factored")]
    NotFactorable(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("not a complex: {0}")]
    NotAComplex(String),
    #[error("not a chain map: {0}")]
    NotAChainMap(String),
    #[error("not a homotopy: {0}")]
    NotAHomotopy(String),
    #[error("module is not torsion")]
    NotTorsion,
    #[error("module map is not well defined on the presentation")]
    IllDefinedMap,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("hypothesis not met: {0}")]
    HypothesisNotMet(String),
    #[error("malformed diagram: {0}")]
    MalformedDiagram(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    pub(crate) fn dims(args: fmt::Arguments<'_>) -> Self {
        Error::DimensionMismatch(args.to_string())
    }

    pub(crate) fn pre(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    /// Short machine-readable tag, used in reports and fixtures.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DomainMismatch(..) => "domain-mismatch",
            Error::NotFactorable(_) => "not-factorable",
            Error::DimensionMismatch(_) => "dimension-mismatch",
            Error::NotAComplex(_) => "not-a-complex",
            Error::NotAChainMap(_) => "not-a-chain-map",
            Error::NotAHomotopy(_) => "not-a-homotopy",
            Error::NotTorsion => "not-torsion",
            Error::IllDefinedMap => "ill-defined-map",
            Error::Precondition(_) => "precondition",
            Error::HypothesisNotMet(_) => "hypothesis-not-met",
            Error::MalformedDiagram(_) => "malformed-diagram",
            Error::InvalidInput(_) => "invalid-input",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
