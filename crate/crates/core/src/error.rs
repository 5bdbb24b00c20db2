use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParams(String),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("invalid decomposition: {0}")]
    InvalidDecomposition(String),

    #[error("shape mismatch: expected {expected} values, got {found}")]
    ShapeMismatch { expected: usize, found: usize },

    #[error("singular system: zero pivot at row {row}")]
    Singular { row: usize },

    #[error("badly conditioned system (pivot-ratio estimate {estimate:.3e})")]
    IllConditioned { estimate: f64 },

    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
