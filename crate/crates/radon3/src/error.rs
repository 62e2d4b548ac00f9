use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RadonError {
    #[error("DecayError: {0}")]
    Decay(String),
    #[error("DomainError: {0}")]
    Domain(String),
    #[error(transparent)]
    Special(#[from] special_fn::SpecialError),
}
