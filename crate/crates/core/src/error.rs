use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid Cartan type {series}{rank}")]
    InvalidType { series: String, rank: usize },
    #[error("invalid permutation {0:?}")]
    InvalidPermutation(Vec<usize>),
    #[error("normal ordering search failed: {0}")]
    OrderingSearch(String),
    #[error("Cayley coefficient mismatch at ({i}, {j}): lemma gives {lemma}, linear algebra gives {direct}")]
    CayleyMismatch { i: usize, j: usize, lemma: String, direct: String },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("pole at q = 1: {0}")]
    Pole(String),
    #[error("realization mismatch: {0}")]
    RealizationMismatch(String),
    #[error("rewriting budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("root vector construction failed: {0}")]
    RootVector(String),
    #[error("normalization inconsistency: {0}")]
    Residual(String),
    #[error("representation invalid: {0}")]
    Representation(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Scalar(#[from] crate::qscalar::ParseScalarError),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
