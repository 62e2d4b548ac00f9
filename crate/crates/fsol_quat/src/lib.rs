//! Fundamental solution of the sub-Laplacian on the quaternionic
//! Heisenberg groups: the kernel and its c₀ constant, the pairing as
//! displayed in closed form, and a corrected pairing obtained by Radon
//! reduction to the complex groups of doubled signature.

pub mod config;
pub mod error;
pub mod kernel;
pub mod literal;
pub mod poisson;
pub mod reduce;

pub use config::{c0, c0_closed, c0_value, C0Variant, QuatKernelConfig};
pub use error::QuatError;
pub use kernel::*;
pub use literal::{d_r, jet_profile, phi11_quat_pair, phi12_quat_terms, phi_quat_literal, Phi11Grid, Phi12Term, QuatBoundaryTerms};
pub use poisson::{poisson_limit_check, poisson_smooth_at_zero, PoissonLimit};
pub use reduce::{
    averaged_slice, phi_quat_pair, phi_quat_pair_with, radon_center, radon_slice, resonant_defect_quat, resonant_k,
    spectral_phi_quat_pair, verify_fundamental_quat, verify_fundamental_quat_report, QuatFundamentalReport, QuatGrid,
};
