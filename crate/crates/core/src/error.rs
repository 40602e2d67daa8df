use std::io;

use num_bigint::BigUint;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected} coordinates, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// A theorem-specific hypothesis does not hold. The message names the
    /// failed constraint.
    #[error("{theorem} {constraint}")]
    Precondition { theorem: String, constraint: String },

    #[error("enumeration budget exceeded: {required} {what} required, {allowed} allowed")]
    BudgetExceeded {
        what: &'static str,
        required: BigUint,
        allowed: u64,
    },

    #[error("degenerate configuration: {0}")]
    Degenerate(String),

    #[error("non-finite coordinate at index {0}")]
    NonFinite(usize),

    #[error("no non-degenerate samples were drawn")]
    NoSamples,

    /// The oracle could not decide a predicate exactly and the floating-point
    /// slack was below the certification threshold.
    #[error("predicate undecidable at double precision: slack {slack:e}")]
    Ambiguous { slack: f64 },

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn precondition(theorem: impl ToString, constraint: impl Into<String>) -> Self {
        Error::Precondition {
            theorem: theorem.to_string(),
            constraint: constraint.into(),
        }
    }
}
