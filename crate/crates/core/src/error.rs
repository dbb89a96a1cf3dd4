use thiserror::Error;

/// Errors raised by the library.
///
/// Mathematical mismatches are not errors: checks report them through
/// their return values so callers can print the offending parameters.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("rank must be at least 2, got {0}")]
    RankTooSmall(usize),

    #[error("weight {0:?} is not dominant")]
    NotDominant(Vec<i64>),

    #[error("negative entry in {what}: {values:?}")]
    NegativeEntry { what: &'static str, values: Vec<i64> },

    #[error("multinomial top index {0} is negative")]
    NegativeTop(i64),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("s1 = {s1} is below the threshold {threshold}: the weight space is computed by a unitriangular matrix")]
    BelowThreshold { s1: i64, threshold: i64 },

    #[error("inexact division in {0}")]
    InexactDivision(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
