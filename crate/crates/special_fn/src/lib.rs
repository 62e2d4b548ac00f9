//! Special functions and quadrature primitives.
//!
//! Everything in here is generic over the real scalar through [`Real`];
//! the downstream pipelines instantiate it with `f64` via the [`R`] and
//! [`C64`] aliases.

pub mod combin;
pub mod error;
pub mod gamma;
pub mod laguerre;
pub mod poly;
pub mod quad;
pub mod richardson;
pub mod scalar;
pub mod sphere;
pub mod sum;

pub use error::SpecialError;
pub use gamma::{beta, gamma, incomplete_beta_half, incomplete_beta_half_series};
pub use laguerre::{laguerre, laguerre_generating_residual, laguerre_table, GeneratingResidual};
pub use scalar::{cst, Real, C64, R};
