use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("pattern is empty")]
    EmptyPattern,

    #[error("no patterns given")]
    NoPatterns,

    /// A 1-indexed position outside `1..=len`.
    #[error("position {position} is out of range for a string of length {len}")]
    OutOfRange { position: usize, len: usize },

    #[error("malformed parent-distance string at position {position}: {reason}")]
    MalformedParentDistance {
        position: usize,
        reason: &'static str,
    },

    #[error("cannot delete from an empty signature")]
    EmptySignature,

    #[error("invalid integer {token:?} in parent-distance string")]
    ParseParentDistance { token: String },

    #[error("corrupt index: {0}")]
    CorruptIndex(String),
}
