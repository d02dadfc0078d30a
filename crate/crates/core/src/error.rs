use thiserror::Error;

#[derive(Debug, Error)]
pub enum DetvarError {
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("weight {0:?} is not dominant")]
    NotDominant(Vec<i64>),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("integer overflow in {0}")]
    Overflow(&'static str),
    #[error(transparent)]
    Algebra(#[from] commalg::CommalgError),
}

pub type Result<T> = std::result::Result<T, DetvarError>;
