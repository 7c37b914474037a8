use thiserror::Error;

/// Errors raised by the toolkit.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("the empty partition has no perimeter")]
    EmptyPartition,

    #[error("parts must be positive and nonincreasing: {0:?}")]
    InvalidParts(Vec<usize>),

    #[error("invalid profile word {word:?}: {reason}")]
    InvalidProfile { word: String, reason: &'static str },

    #[error("invalid parameter `{field}`: {reason}")]
    InvalidParameter { field: &'static str, reason: String },

    #[error("denominator constant term must be 1")]
    NonUnitDenominator,

    #[error("part {0} is not in the source set")]
    PartOutsideSet(usize),

    #[error("check failed: {0}")]
    CheckFailed(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(field: &'static str, reason: impl Into<String>) -> Error {
    Error::InvalidParameter {
        field,
        reason: reason.into(),
    }
}

/// Returns an `InvalidParameter` error unless `cond` holds.
pub(crate) fn ensure(cond: bool, field: &'static str, reason: impl Into<String>) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(invalid(field, reason))
    }
}
