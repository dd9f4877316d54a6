use thiserror::Error;

use crate::arith::Field;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(Field, Field),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("ideal is not m-primary")]
    NotMPrimary,

    #[error("zero ideal: {0}")]
    ZeroIdeal(String),

    #[error("not m-primary at truncation order {order} (ceiling {ceiling})")]
    TruncationCeiling { order: u32, ceiling: u32 },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("generic sampling failed after {attempts} attempts: {reason}")]
    RetryExhausted { attempts: usize, reason: String },

    #[error("multiplicity methods disagree: reduction colength {reduction} vs second difference {difference}")]
    MethodDisagreement { reduction: u64, difference: u64 },

    #[error("not contained: {0}")]
    NotContained(String),

    #[error("invalid module: {0}")]
    InvalidModule(String),

    #[error("length sequence did not stabilize up to t = {0}")]
    NoStabilization(usize),

    #[error("cross-check failed: {0}")]
    CrossCheck(String),

    #[error("invalid input: {0}")]
    Input(String),
}

impl Error {
    /// True for malformed input as opposed to a mathematical obstruction.
    pub fn is_input_error(&self) -> bool {
        matches!(self, Error::Parse(_) | Error::Input(_) | Error::FieldMismatch(..))
    }
}
