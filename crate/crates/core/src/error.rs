use thiserror::Error;

/// Errors produced by the orbitq library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("map is not a bijection: {0}")]
    NotBijective(String),

    #[error("{what} of size {size} exceeds the limit of {limit}")]
    TooLarge {
        what: &'static str,
        size: usize,
        limit: usize,
    },

    #[error("cycle from state {start} did not return within {limit} steps")]
    NoReturn { start: usize, limit: usize },

    #[error("index {index} out of range for length {len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("state is in the {found} basis, expected {expected}")]
    WrongBasis {
        expected: &'static str,
        found: &'static str,
    },

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("bandwidth mismatch: {0}")]
    BandwidthMismatch(String),

    #[error("state belongs to orbit {state} but spectrum to orbit {spectrum}")]
    OrbitMismatch { state: usize, spectrum: usize },

    #[error("state has no occupied frequencies")]
    EmptySupport,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
