//! Fundamental solution of L_α = L + iαT on the complex groups N(p,q).
//!
//! [`constants`] holds C_α, C̃_α, Ψ_{r,α} and c_j^±; [`coeffs`] the
//! a/b/c coefficient tables; [`phi`] the pairing ⟨Φ_α, g⟩ normalized so
//! that ⟨Φ_α, (L_α f)^∨⟩ = f(e), with a spectral-sum route as an
//! independent check; [`literal`] the closed-form display taken at face
//! value, for comparison.

pub mod alpha;
pub mod coeffs;
pub mod constants;
pub mod error;
pub mod jets;
pub mod literal;
pub mod phi;
pub mod polar;
mod rpoly;

pub use alpha::{AlphaParam, Resonance};
pub use coeffs::{coeff_tables, AbDiscrepancy, BinomConvention, CoefficientTable};
pub use constants::{abel_constant, abel_constant_check, c_alpha, c_alpha_tilde, cj_abel, cj_pm, psi_r_alpha, PsiSeries, Sign};
pub use error::FsolError;
pub use literal::{phi11_pair, phi12_phi2_terms, phi_pair_literal, BoundaryTerms};
pub use phi::{
    phi_breakdown, phi_pair, phi_pair_with, resonant_defect, spectral_phi_pair, verify_fundamental,
    verify_fundamental_report, FundamentalReport, PhiBreakdown, PhiPairing,
};
pub use polar::PhiGrid;
