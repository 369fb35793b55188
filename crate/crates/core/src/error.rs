use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("truncation orders differ: {left} vs {right}")]
    TruncationMismatch { left: usize, right: usize },
    #[error("functional is not invertible: value on 1 is {0}")]
    NotInvertible(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("invalid input: {0}")]
    Parse(String),
    #[error("size limit exceeded: {0}")]
    SizeLimit(String),
    #[error("grid size {grid} aliases cutoff {cutoff}: need M >= 2N+1")]
    Aliasing { grid: usize, cutoff: usize },
    #[error("io error: {0}")]
    Io(String),
}

impl Error {
    /// Process exit code used by the command line tool.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::SizeLimit(_) => 3,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
