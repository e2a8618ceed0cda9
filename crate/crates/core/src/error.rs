use crate::group::Group;

/// Errors raised by the library.
#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("rank parameter {n} is below the minimum {min} for {family}")]
    RankTooSmall {
        family: &'static str,
        n: usize,
        min: usize,
    },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("group mismatch: {left} vs {right}")]
    GroupMismatch { left: Group, right: Group },
    #[error("not a coweight of {group}: {reason}")]
    InvalidCoweight { group: Group, reason: String },
    #[error("{op} is only defined for {expected}")]
    WrongFamily {
        op: &'static str,
        expected: &'static str,
    },
    #[error("coweight {0} is not minuscule")]
    NotMinuscule(String),
    #[error("{0} is not in the admissible set")]
    NotAdmissible(String),
    #[error("element is not central: {0}")]
    NotCentral(String),
    #[error("outside supported bounds: {0}")]
    OutOfBounds(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("normalization failure: {0}")]
    Normalization(String),
    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
