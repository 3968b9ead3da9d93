use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("rank {k} is out of bounds for a sequence of length {len}")]
    RankOutOfBounds { k: usize, len: usize },

    #[error("a heap of zero elements has no levels")]
    EmptyHeap,

    #[error("level {ell} is not a perfect level of a heap with deepest perfect level {d}")]
    LevelOutOfRange { ell: u32, d: u32 },

    #[error("heap property violated at index {index}")]
    NotAHeap { index: usize },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
