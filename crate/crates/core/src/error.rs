use thiserror::Error;

/// Errors raised by the numerical routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum HardyError {
    #[error("integral diverges: {0}")]
    Divergent(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("invalid exponents: {0}")]
    InvalidExponents(String),
    #[error("tolerance not met after {subdivisions} subdivisions (estimate {estimate:e}, error {error:e})")]
    ToleranceNotMet {
        estimate: f64,
        error: f64,
        subdivisions: usize,
    },
    #[error("no sign change on [{lo}, {hi}]")]
    NoSignChange { lo: f64, hi: f64 },
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("weight is not non-decreasing")]
    NotMonotone,
    #[error("out of range: {0}")]
    OutOfRange(String),
    #[error("invalid weight: {0}")]
    InvalidWeight(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, HardyError>;
