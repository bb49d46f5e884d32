use thiserror::Error;

use crate::rational::Rational;

pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong when building spaces and fields or running
/// checks. Variants carry enough context to be actionable in CLI output.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("weights sum to {0}, expected 1")]
    NonUnitMass(Rational),

    #[error("outcome {label:?} has negative weight {weight}")]
    NegativeWeight { label: String, weight: Rational },

    #[error("duplicate outcome label {0:?}")]
    DuplicateLabel(String),

    #[error("blocks do not partition the support: {0}")]
    NotAPartition(String),

    #[error("operands live on different probability spaces")]
    SpaceMismatch,

    #[error("meet of an empty family is undefined")]
    EmptyFamily,

    #[error("{what} needs {needed} steps, cap is {cap}")]
    CapExceeded { what: String, needed: u128, cap: u128 },

    #[error("fields are not independent, `plus` is undefined")]
    NotIndependent,

    #[error("{0} is not a sub-sigma-field of the ambient field")]
    NotSub(String),

    #[error("precondition failed: {0}")]
    PreconditionFailed(String),

    #[error("proved equivalence violated: {0}")]
    EquivalenceViolated(String),

    #[error("unknown law id {0:?}")]
    UnknownLaw(String),

    #[error("unknown catalog example {0:?}")]
    UnknownExample(String),

    #[error("level {level} too large for {id:?}, max {max}")]
    LevelTooLarge { id: String, level: usize, max: usize },

    #[error("replaying the recorded counterexample did not reproduce its report")]
    ReplayMismatch,

    #[error("invalid rational literal {0:?}")]
    BadRational(String),

    #[error("unknown outcome label {0:?}")]
    UnknownLabel(String),
}
