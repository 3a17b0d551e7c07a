use thiserror::Error;

/// Errors raised by the library. Every operation validates its
/// preconditions and reports the first violation it finds.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("element lies outside the unit ball: {norm_name} norm is {norm} (> 1)")]
    OutsideUnitBall { norm_name: &'static str, norm: f64 },

    #[error("degenerate input: {0}")]
    Degenerate(String),
}

pub type Result<T> = std::result::Result<T, Error>;
