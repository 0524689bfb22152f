use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid generator spec: {0}")]
    InvalidSpec(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("main loop did not reach a clique partition within {max_iterations} iterations")]
    TerminationOverflow { max_iterations: usize },

    #[error("shrink phase made no progress for {rounds} consecutive rounds at {vertices} vertices")]
    NoProgress { rounds: usize, vertices: usize },

    #[error("space audit failed: {0}")]
    AuditViolation(String),

    #[error("labeling disagrees with the union-find oracle")]
    VerificationMismatch,

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
