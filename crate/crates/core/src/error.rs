use std::io;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    /// A caller broke an operation's precondition (bad vertex id, size mismatch).
    #[error("contract violation: {0}")]
    Contract(String),

    #[error("invalid argument: {0}")]
    Argument(String),

    /// Recursion depth or output cap exceeded.
    #[error("resource limit exceeded: {0}")]
    Resource(String),

    #[error("generation failed: {0}")]
    Generation(String),

    #[error("deadline exceeded after {calls} recursive calls")]
    Timeout { calls: u64 },

    #[error(transparent)]
    Io(#[from] io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
