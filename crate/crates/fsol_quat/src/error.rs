use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QuatError {
    #[error("UnresolvedVariant: the c0 exponent sign has not been resolved")]
    UnresolvedVariant,
    #[error("DomainError: {0}")]
    Domain(String),
    #[error(transparent)]
    Radon(#[from] radon3::RadonError),
    #[error(transparent)]
    Fsol(#[from] fsol_complex::FsolError),
    #[error(transparent)]
    Spectral(#[from] spectral::SpectralError),
    #[error(transparent)]
    Heis(#[from] heis_ops::HeisError),
    #[error(transparent)]
    Teng(#[from] tengstrand::TengError),
    #[error(transparent)]
    Special(#[from] special_fn::SpecialError),
}
