use std::fmt;

use serde::Serialize;
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed equation: {0}")]
    Parse(String),

    /// Index is 0-based.
    #[error("coefficient {} is zero", .index + 1)]
    ZeroCoefficient { index: usize },

    #[error("an equation needs at least 2 terms, got {0}")]
    TooFewTerms(usize),

    #[error("right-hand side must be 0, got `{0}`")]
    NonZeroRhs(String),

    #[error("{what} = {value} is outside [{min}, {max}]")]
    OutOfRange {
        what: &'static str,
        value: i128,
        min: i128,
        max: i128,
    },

    #[error("integer overflow: {0}")]
    Overflow(String),

    #[error("{x} is outside the coloring domain [1, {bound}]")]
    OutOfDomain { x: u64, bound: u64 },

    #[error("invalid coloring: {0}")]
    InvalidColoring(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("coordinate x{} = {value} is not a positive integer", .index + 1)]
    NonPositive { index: usize, value: String },

    #[error("{0} is not an integer")]
    NonIntegral(String),

    /// The search ran out of its explicit budget. This is not a failure of
    /// the underlying existence theorem, only of the bound searched.
    #[error("budget exhausted during {0}")]
    BudgetExhausted(Exhaustion),

    /// A freshly built object failed its independent re-check.
    #[error("verification failed: {0}")]
    Verification(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Where a bounded search gave up, and what it had covered.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Exhaustion {
    pub stage: String,
    pub searched: String,
}

impl Exhaustion {
    pub fn new(stage: impl Into<String>, searched: impl Into<String>) -> Self {
        Self {
            stage: stage.into(),
            searched: searched.into(),
        }
    }
}

impl fmt::Display for Exhaustion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (searched {})", self.stage, self.searched)
    }
}

impl Error {
    pub fn is_budget_exhausted(&self) -> bool {
        matches!(self, Error::BudgetExhausted(_))
    }

    pub(crate) fn out_of_range(what: &'static str, value: impl Into<i128>, min: i128, max: i128) -> Self {
        Error::OutOfRange {
            what,
            value: value.into(),
            min,
            max,
        }
    }
}
