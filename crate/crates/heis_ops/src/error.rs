use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum HeisError {
    #[error("SignatureMismatch: {0}")]
    SignatureMismatch(String),
    #[error("FieldMismatch: operator {op} is not defined over {field}")]
    FieldMismatch { op: String, field: String },
}
