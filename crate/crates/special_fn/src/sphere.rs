//! Closed forms on spheres.

use crate::gamma::gamma_real;

/// Area of S^{d-1} ⊂ R^d, 2π^{d/2}/Γ(d/2).
pub fn area(d: usize) -> f64 {
    let h = d as f64 / 2.0;
    2.0 * std::f64::consts::PI.powf(h) / gamma_real(h).expect("positive argument")
}

/// ∫_{S^{d-1}} ω^β dσ(ω) for a multi-index β.
///
/// Zero if any exponent is odd, otherwise
/// 2 Π Γ((β_i+1)/2) / Γ((|β|+d)/2).
pub fn monomial_moment(beta: &[u32]) -> f64 {
    if beta.iter().any(|b| b % 2 == 1) {
        return 0.0;
    }
    let d = beta.len() as f64;
    let tot: u32 = beta.iter().sum();
    let mut num = 2.0;
    for &b in beta {
        num *= gamma_real((b as f64 + 1.0) / 2.0).expect("positive argument");
    }
    num / gamma_real((tot as f64 + d) / 2.0).expect("positive argument")
}
