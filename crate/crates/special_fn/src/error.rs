use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpecialError {
    #[error("PoleError: argument {re}{im:+}i is at a pole of Gamma")]
    Pole { re: f64, im: f64 },
    #[error("DomainError: {0}")]
    Domain(String),
    #[error("ConvergenceError: {0}")]
    Convergence(String),
}
