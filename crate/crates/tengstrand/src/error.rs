use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TengError {
    #[error("SignatureError: {0}")]
    Signature(String),
    #[error("DomainError: {0}")]
    Domain(String),
    #[error("OrderError: derivative order {j} exceeds n_eff - 2 = {max}")]
    Order { j: usize, max: usize },
    #[error(transparent)]
    Special(#[from] special_fn::SpecialError),
}
