//! ε-family behind the D_r terms.
//!
//! With h = ∂_τ^l Nf(0,·), s = 2n−l−2 and the Poisson kernel
//! P_ε(x) = ε / (π² (ε²+|x|²)²) on ℝ³ (unit mass, P̂_ε = e^{−ε|ω|}),
//!   (P_ε ∗ h)(0) = ∫ e^{−ε|ω|} ĥ(ω) dω,
//! so (−1)^s ∂_ε^s (P_ε ∗ h)(0) → (−Δ)^{s/2} h(0) as ε → 0⁺, with the
//! error a power series in ε. The integral form of d_{ε,l,f} in terms of
//! e^{i⟨x,z⟩} equals (−1)^{l+1} (2π)³ times this quantity.

use crate::error::QuatError;
use crate::literal::jet_profile;
use num_complex::Complex64 as C;
use radon3::{fractional_laplacian_at, PolyGauss, R3Function};
use special_fn::quad::{gl_rule, SphereRule};
use special_fn::richardson::derivative;
use std::f64::consts::PI;
use tengstrand::{Field, NProfile, TestFunction};

/// (P_ε ∗ h)(0) by radial Gauss-Legendre on panels graded at the scale ε
/// times an S² product rule.
pub fn poisson_smooth_at_zero(h: &PolyGauss, eps: f64) -> f64 {
    let sphere = SphereRule::new(3, 12);
    let deg = h.terms.keys().map(|b| b[0] + b[1] + b[2]).max().unwrap_or(0);
    let cut = ((40.0 + deg as f64) / h.a).sqrt();
    // spherical mean of h at radius r
    let mean = |r: f64| -> f64 {
        let mut acc = 0.0;
        for (d, &w) in sphere.points.iter().zip(&sphere.weights) {
            acc += w * h.eval(&[r * d[0], r * d[1], r * d[2]]);
        }
        acc
    };
    let rule = gl_rule(24);
    let mut edges = vec![0.0];
    let mut e = eps / 16.0;
    while e < cut {
        edges.push(e);
        e *= 2.0;
    }
    edges.push(cut);
    let mut acc = 0.0;
    for w in edges.windows(2) {
        for (r, wr) in rule.mapped(w[0], w[1]) {
            let k = eps / (PI * PI * (eps * eps + r * r).powi(2));
            acc += wr * r * r * k * mean(r);
        }
    }
    // ∫_{r > cut} P_ε(r) h: h is below e^{−40} there, only P_ε's mass times sup|h| matters
    acc
}

#[derive(Debug, Clone, PartialEq)]
pub struct PoissonLimit {
    pub l: usize,
    pub s: usize,
    pub eps: Vec<f64>,
    /// (−1)^s ∂_ε^s (P_ε ∗ h)(0) at each ε.
    pub values: Vec<C>,
    /// Richardson limit ε → 0 (polynomial in ε through all points).
    pub extrapolated: C,
    /// (−Δ)^{s/2} h(0) from the Fourier multiplier.
    pub fractional: C,
    pub rel_error: f64,
    /// The limit as it enters the integral form of d_{ε,l,f}:
    /// (−1)^{l+1} (2π)³ (−Δ)^{s/2} h(0).
    pub integral_form_limit: C,
    /// The limit as displayed, −(−Δ)^{s/2} h(0).
    pub displayed_limit: C,
}

/// Neville extrapolation to ε = 0 of values at distinct ε.
fn extrapolate(eps: &[f64], vals: &[C]) -> C {
    let mut t: Vec<C> = vals.to_vec();
    let m = eps.len();
    for k in 1..m {
        for i in 0..m - k {
            let (a, b) = (eps[i], eps[i + k]);
            t[i] = (t[i + 1] * a - t[i] * b) / (a - b);
        }
    }
    t[0]
}

pub fn poisson_limit_check(f: &TestFunction, l: usize, eps: &[f64]) -> Result<PoissonLimit, QuatError> {
    if f.sig.field != Field::Quaternionic {
        return Err(QuatError::Domain("expected a quaternionic test function".into()));
    }
    let n2 = f.sig.n_eff();
    if l + 2 > n2 || eps.len() < 2 || eps.iter().any(|&e| e <= 0.0) {
        return Err(QuatError::Domain("need l <= 2n-2 and at least two positive eps".into()));
    }
    let s = n2 - l - 2;
    let prof = NProfile::new(f);
    let (re, im) = jet_profile(&prof, l);
    let sign = if s % 2 == 0 { 1.0 } else { -1.0 };
    let part = |h: &PolyGauss| -> Result<(Vec<f64>, f64), QuatError> {
        if h.is_zero() {
            return Ok((vec![0.0; eps.len()], 0.0));
        }
        let vals = eps
            .iter()
            .map(|&e| {
                let d = derivative(|x| C::new(poisson_smooth_at_zero(h, x), 0.0), e, s as u32, e / 4.0, 4).0;
                sign * d.re
            })
            .collect();
        let frac = fractional_laplacian_at(&R3Function::from(h.clone()), s as f64, &[0.0; 3])?;
        Ok((vals, frac))
    };
    let (vr, fr) = part(&re)?;
    let (vi, fi) = part(&im)?;
    let values: Vec<C> = vr.iter().zip(&vi).map(|(a, b)| C::new(*a, *b)).collect();
    let extrapolated = extrapolate(eps, &values);
    let fractional = C::new(fr, fi);
    let rel_error = (extrapolated - fractional).norm() / fractional.norm().max(1e-300);
    let tp3 = (2.0 * PI).powi(3);
    Ok(PoissonLimit {
        l,
        s,
        eps: eps.to_vec(),
        values,
        extrapolated,
        fractional,
        rel_error,
        integral_form_limit: fractional * (if l % 2 == 0 { -tp3 } else { tp3 }),
        displayed_limit: -fractional,
    })
}
