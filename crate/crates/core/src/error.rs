use thiserror::Error;

/// Errors raised by code construction, the enumeration oracles and the
/// overhead analysis.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    /// A parameter triple or argument outside the admissible range. The
    /// message names the violated inequality.
    #[error("{0} violated")]
    Constraint(String),

    #[error("enumeration of 2^{log2_count} elements exceeds budget {budget}")]
    BudgetExceeded { log2_count: u32, budget: u64 },

    #[error("{what} does not fit in 128 bits")]
    Overflow { what: String },

    /// An internal consistency check failed during construction.
    #[error("construction failed: {0}")]
    Construction(String),

    #[error("below threshold: {0}")]
    BelowThreshold(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn constraint(s: impl Into<String>) -> Self {
        Error::Constraint(s.into())
    }

    pub fn is_budget(&self) -> bool {
        matches!(self, Error::BudgetExceeded { .. })
    }
}
