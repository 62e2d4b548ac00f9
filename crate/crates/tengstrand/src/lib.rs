//! Geometry of the quadratic form |u|² − |w|² on 𝔽ⁿ = 𝔽^p × 𝔽^q.
//!
//! A [`TestFunction`] is a polynomial times a Gaussian in the real
//! coordinates of (v, ζ). Its N-transform collapses the v-variable onto the
//! single real parameter τ = |u|² − |w|², and is available both exactly
//! ([`NProfile`]) and by quadrature ([`transform`]).

pub mod bipolar;
pub mod error;
pub mod nprofile;
pub mod signature;
pub mod testfn;
pub mod transform;

pub use bipolar::{bipolar_decompose, Bipolar};
pub use error::TengError;
pub use nprofile::{NProfile, NSector};
pub use signature::{Field, Signature};
pub use testfn::{Multi, TestFunction};
pub use transform::{kappa, m_transform, n_tau_derivative_at_zero, n_transform, QuadGrid};

pub use special_fn::C64;
