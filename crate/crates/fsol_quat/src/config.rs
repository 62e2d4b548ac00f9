//! The constant c₀ = −∫₀¹ σ^{2n−1}(1+σ²)^{±2n} dσ and its sign ambiguity.

use crate::error::QuatError;
use special_fn::quad::gl_rule;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum C0Variant {
    /// (1+σ²)^{+2n}, as printed.
    ExponentPlus,
    /// (1+σ²)^{−2n}, the reading that makes φ match the Laguerre series.
    ExponentMinus,
}

impl C0Variant {
    pub const ALL: [C0Variant; 2] = [C0Variant::ExponentPlus, C0Variant::ExponentMinus];

    fn exponent(self, n: usize) -> i32 {
        match self {
            C0Variant::ExponentPlus => 2 * n as i32,
            C0Variant::ExponentMinus => -2 * (n as i32),
        }
    }
}

impl fmt::Display for C0Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            C0Variant::ExponentPlus => write!(f, "exponent_plus"),
            C0Variant::ExponentMinus => write!(f, "exponent_minus"),
        }
    }
}

/// −∫₀¹ σ^{2n−1}(1+σ²)^{±2n} dσ by Gauss-Legendre (the integrand is a
/// polynomial or a smooth rational function on [0,1]).
pub fn c0_value(n: usize, variant: C0Variant) -> f64 {
    let e = variant.exponent(n);
    let rule = gl_rule(48);
    -rule
        .mapped(0.0, 1.0)
        .map(|(s, w)| w * s.powi(2 * n as i32 - 1) * (1.0 + s * s).powi(e))
        .sum::<f64>()
}

/// Independent route for c₀: with u = σ², ½∫₀¹ u^{n−1}(1+u)^{±2n} du, the
/// plus case by binomial expansion, the minus case by u = v/(1−v) as the
/// incomplete Beta ½B_{1/2}(n, n).
pub fn c0_closed(n: usize, variant: C0Variant) -> f64 {
    match variant {
        C0Variant::ExponentPlus => {
            let m = 2 * n;
            let mut acc = 0.0;
            for k in 0..=m {
                acc += special_fn::combin::binom(m as i64, k as i64) / (k + n) as f64;
            }
            -0.5 * acc
        }
        C0Variant::ExponentMinus => {
            let b = special_fn::incomplete_beta_half(
                num_complex::Complex64::new(n as f64, 0.0),
                num_complex::Complex64::new(n as f64, 0.0),
            )
            .expect("positive parameters");
            -0.5 * b.re
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct QuatKernelConfig {
    pub n: usize,
    pub c0_variant: C0Variant,
    /// Set by [`crate::resolve_variant`] (or by hand, recorded in notes);
    /// every φ-pairing requires it.
    pub resolved: Option<C0Variant>,
}

impl QuatKernelConfig {
    pub fn new(n: usize, c0_variant: C0Variant) -> Result<Self, QuatError> {
        if n < 2 {
            return Err(QuatError::Domain(format!("n = {n} must be at least 2")));
        }
        Ok(QuatKernelConfig { n, c0_variant, resolved: None })
    }

    /// The configured variant, without resolution.
    pub fn c0(&self) -> f64 {
        c0_value(self.n, self.c0_variant)
    }

    /// c₀ of the resolved variant.
    pub fn resolved_c0(&self) -> Result<f64, QuatError> {
        let v = self.resolved.ok_or(QuatError::UnresolvedVariant)?;
        Ok(c0_value(self.n, v))
    }

    pub fn with_resolved(mut self, v: C0Variant) -> Self {
        self.resolved = Some(v);
        self
    }
}

/// c₀ of the configured variant. Pairings use [`QuatKernelConfig::resolved_c0`]
/// instead, which fails until the variant is resolved.
pub fn c0(config: &QuatKernelConfig) -> f64 {
    config.c0()
}
