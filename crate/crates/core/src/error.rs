use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A numeric parameter (cycle length, arity, coordinate, ...) is outside its domain.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// A structured argument (map, chain, table) does not satisfy the operation's precondition.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// Exhaustive enumeration was refused because the search space is too large.
    #[error(
        "search space bound {estimate:.3e} exceeds budget {budget:.3e}; \
         use sampling (--sample) or raise CYCLE_MINION_BUDGET"
    )]
    BudgetExceeded { estimate: f64, budget: f64 },

    /// A divisibility or kernel property guaranteed by theory failed. Always a bug.
    #[error("internal invariant violated: {0}")]
    InvariantViolation(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid_parameter(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}

pub(crate) fn invalid_argument(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}
