use thiserror::Error;

/// Errors raised by the numerical core.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// A named input violated its precondition.
    #[error("invalid value for {field}: {reason}")]
    InvalidParameter { field: &'static str, reason: String },

    /// The time grid could not be built from the requested window and step.
    #[error("invalid time grid: {0}")]
    InvalidGrid(String),

    /// An intermediate exponential in the complex error function would overflow.
    #[error("erf argument {re}+{im}i is outside the representable domain")]
    Overflow { re: f64, im: f64 },

    /// Split sequences must alternate X and Z factors.
    #[error("split sequence is not strictly alternating at position {0}")]
    NonAlternating(usize),

    #[error("sequence is empty")]
    EmptySequence,

    /// Peak finding needs at least three maxima.
    #[error("found {found} maxima, need at least 3")]
    TooFewExtrema { found: usize },

    /// Engine and factor form do not match.
    #[error("invalid pipeline: {0}")]
    InvalidPipeline(String),

    #[error("worker pool: {0}")]
    WorkerPool(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(field: &'static str, reason: impl Into<String>) -> Error {
    Error::InvalidParameter {
        field,
        reason: reason.into(),
    }
}
