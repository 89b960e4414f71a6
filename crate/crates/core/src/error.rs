use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("subspace is not block-decomposable: {0}")]
    NotDecomposable(String),
    #[error("kernel does not match the expected shifted Toeplitz structure: {0}")]
    StructureMismatch(String),
    #[error("no invertible intertwiner found after {attempts} attempts")]
    SimilarityBudgetExhausted { attempts: usize },
    #[error("matrices are not similar: {0}")]
    NotSimilar(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
