use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FsolError {
    #[error("ResonanceError: 2k+p-q{sign}alpha vanishes at k = {k} (alpha = {alpha})")]
    Resonance { k: i64, sign: char, alpha: String },
    #[error("PoleError: {0}")]
    Pole(String),
    #[error("DomainError: {0}")]
    Domain(String),
    #[error(transparent)]
    Special(#[from] special_fn::SpecialError),
    #[error(transparent)]
    Spectral(#[from] spectral::SpectralError),
    #[error(transparent)]
    Heis(#[from] heis_ops::HeisError),
}
