use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpectralError {
    #[error("IndexError: Laguerre degree {0} is negative")]
    Index(i64),
    #[error("DomainError: {0}")]
    Domain(String),
    #[error(transparent)]
    Special(#[from] special_fn::SpecialError),
    #[error(transparent)]
    Heis(#[from] heis_ops::HeisError),
}
