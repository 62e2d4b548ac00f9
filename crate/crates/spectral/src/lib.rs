//! Pairings of test functions with the spherical eigendistributions.
//!
//! Over ℂ, S_{λ,k} = e^{−iλt} ⊗ F_{λ,k}; over ℍ, φ_{w,k} = e^{i⟨w,z⟩} ⊗ θ_{|w|,k}
//! where θ is F with (n, p, q) replaced by (2n, 2p, 2q). F_{λ,k} acts on a
//! function of v only through its N-transform, so every pairing reduces to
//! one-dimensional integrals of Laguerre polynomials against polynomial ×
//! exponential profiles, which are evaluated in closed form.

pub mod error;
pub mod fourier;
pub mod fpair;
pub mod inversion;
pub mod pairing;

pub use error::SpectralError;
pub use fpair::{f_lambda_k_pair, f_lambda_k_pair_quad, laguerre_exp_integral, FParams, NgDerivative};
pub use inversion::{inversion_constant, inversion_synthesize, spectral_integral, spectral_integral_with_tail, InversionGrid};
pub use pairing::{
    eigen_residual_l, eigen_residual_u, pair, phi_pair_range, s_lambda_k_pair, s_lambda_k_pair_quad, s_pair_range,
    varphi_w_k_pair, PairingResult, SpectralIndex,
};
