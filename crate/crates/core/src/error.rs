use thiserror::Error;

use crate::ring::RingError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error("matrix determinant must be 1, got {0}")]
    NotSl2(String),
    #[error("matrix entries must be rational integers")]
    NonIntegerEntries,
    #[error("point is not a member of the variety")]
    NotAMember,
    #[error("expected {expected} coordinates, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("invalid length: {0}")]
    InvalidLength(String),
    #[error("window modulus 1 + x_(i+1)·x_(i+2) is zero")]
    ZeroWindowModulus,
    #[error("window modulus is nonzero")]
    NonzeroWindowModulus,
    #[error("{0} is not a unit")]
    NotAUnit(String),
    #[error("window index {index} out of range for a point of length {len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("top-left entry must be 1")]
    TopLeftNotOne,
    #[error("search space of {candidates} half-words exceeds the cap of {cap}")]
    BoundTooLarge { candidates: u128, cap: u128 },
    #[error("empty point set")]
    EmptyPointSet,
    #[error("points have mixed lengths")]
    MixedLengths,
    #[error("degree bound must be at least 1")]
    ZeroDegree,
    #[error("malformed input: {0}")]
    Format(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
