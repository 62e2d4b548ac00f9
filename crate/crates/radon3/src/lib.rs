//! Radon transform on ℝ³ and the pieces the quaternionic fundamental
//! solution needs from it: the dual transform, the inversion identity
//! −2πF = Δℛ*ℛF and fractional Laplacians at a point.

pub mod error;
pub mod fraclap;
pub mod function;
pub mod radon;

pub use error::RadonError;
pub use fraclap::{frac_lap_gauss, fractional_laplacian_at, fractional_laplacian_with, FracLapGrid};
pub use function::{gauss_moment, DecayCertificate, Kernel, PolyGauss, R3Function};
pub use radon::{
    completion_basis, dual_of_radon, dual_radon, dual_radon_grid, duality, inversion_residual, inversion_residual_with,
    laplacian_dual_radon, radon, radon_grid, radon_mass, radon_with_basis, DualityReport, RadonGrid, SphereMeasure, Vec3,
};
