use thiserror::Error;

use crate::lp::LpStatus;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Malformed data: dimension mismatch, index out of range, negative cost.
    #[error("structural error: {0}")]
    Structural(String),
    /// A solver or builder parameter outside its admissible range.
    #[error("parameter error: {0}")]
    Parameter(String),
    /// Input text could not be parsed. `token` is the 1-based token (or line) position.
    #[error("parse error at {unit} {position}: {message}")]
    Parse {
        unit: &'static str,
        position: usize,
        message: String,
    },
    /// The requested problem exceeds a size guard of an exhaustive or dense routine.
    #[error("too large: {0}")]
    TooLarge(String),
    #[error("LP solver did not reach optimality: {0:?}")]
    Solver(LpStatus),
    #[error("instance generation failed: {0}")]
    Generation(String),
}

impl Error {
    pub(crate) fn parse(unit: &'static str, position: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            unit,
            position,
            message: message.into(),
        }
    }
}
