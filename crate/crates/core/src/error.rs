use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero or by a non-invertible element")]
    DivisionByZero,

    #[error("degenerate input: {0}")]
    DegenerateInput(&'static str),

    #[error("size mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },

    #[error("kind mismatch: {0}")]
    KindMismatch(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("minimality cannot be certified: {0}")]
    MinimalityUnavailable(&'static str),

    #[error("fractions have different values")]
    ValueMismatch,

    #[error("search exhausted after {budget} candidates")]
    SearchExhausted { budget: usize },

    #[error("internal inconsistency: {0}")]
    Inconsistent(String),

    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

impl Error {
    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
}
