//! The group N(p,q,𝔽) = 𝔽ⁿ × Im 𝔽 with
//! (v,ζ)(v′,ζ′) = (v+v′, ζ+ζ′ − ½ Im B(v,v′)), B(v,w) = Σ ε_r v_r w̄_r,
//! and the second-order operators built from its left-invariant fields.

pub mod algebra;
pub mod error;
pub mod group;
pub mod ops;
pub mod translate;

pub use error::HeisError;
pub use group::{group_mul, im_b, GroupElement};
pub use ops::{apply_operator, involution, left_invariant_check, OperatorId};
pub use translate::left_translate_taylor;
