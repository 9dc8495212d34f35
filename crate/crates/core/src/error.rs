use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("vertex {vertex} out of range for n = {n}")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("negative cycle")]
    NegativeCycle,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("entry {value} outside declared bound {bound}")]
    BoundExceeded { value: i64, bound: i64 },

    #[error("memory cap exceeded: need {needed} cells, cap is {cap}")]
    MemoryCap { needed: u128, cap: u128 },

    #[error("hop {h} out of range [1, {max}]")]
    HopOutOfRange { h: usize, max: usize },

    #[error("retry budget exhausted: {0}")]
    RetryBudget(String),

    #[error("snapshot: {0}")]
    Snapshot(String),

    #[error("verification failed: {0}")]
    Verification(String),

    #[error("io: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
