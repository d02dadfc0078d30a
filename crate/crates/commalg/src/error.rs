use thiserror::Error;

#[derive(Debug, Error)]
pub enum CommalgError {
    #[error("characteristic {0} is not 0 or a prime below 2^31")]
    InvalidCharacteristic(u64),
    #[error("ring has {0} variables; at most {max} are supported", max = crate::monomial::MAX_VARS)]
    TooManyVariables(usize),
    #[error("exponent overflow in monomial arithmetic")]
    ExponentOverflow,
    #[error("element is not homogeneous: {0}")]
    NotHomogeneous(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("field mismatch: expected {expected}, found {found}")]
    FieldMismatch { expected: String, found: String },
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, CommalgError>;
