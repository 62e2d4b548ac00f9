//! The kernel φ(τ,z) = (16n/π) 4^{2n}(2n−1)! c₀ / (τ²+16|z|²)^{n+1}, its
//! Radon transform in z and the classical Laguerre series it should match.

use crate::config::{c0_value, C0Variant, QuatKernelConfig};
use crate::error::QuatError;
use num_complex::Complex64 as C;
use radon3::{radon_grid, DecayCertificate, R3Function, RadonGrid};
use rayon::prelude::*;
use special_fn::combin::factorial;
use special_fn::quad::gl_rule;
use std::f64::consts::PI;

fn kernel_constant(n: usize, c0: f64) -> f64 {
    4f64.powi(2 * n as i32) * factorial(2 * n as u32 - 1) * c0
}

/// φ(τ, z) as an ℝ³ function of z with its decay certificate.
pub fn phi_kernel(n: usize, c0: f64, tau: f64) -> Result<R3Function, QuatError> {
    if tau == 0.0 {
        return Err(QuatError::Domain("tau must be nonzero".into()));
    }
    let pre = 16.0 * n as f64 / PI * kernel_constant(n, c0);
    let t2 = tau * tau;
    let e = -(n as i32) - 1;
    Ok(R3Function::kernel(
        move |z| pre * (t2 + 16.0 * (z[0] * z[0] + z[1] * z[1] + z[2] * z[2])).powi(e),
        Some(DecayCertificate { exponent: 2.0 * n as f64 + 2.0, scale: tau.abs() / 4.0 }),
    ))
}

/// 4^{2n}(2n−1)! c₀ / (τ² + 16t²)^n.
pub fn varphi_closed(n: usize, c0: f64, tau: f64, t: f64) -> f64 {
    kernel_constant(n, c0) / (tau * tau + 16.0 * t * t).powi(n as i32)
}

/// ℛφ(τ, t, ξ) by plane quadrature.
pub fn radon_phi(n: usize, c0: f64, tau: f64, t: f64, xi: &[f64; 3], grid: &RadonGrid) -> Result<f64, QuatError> {
    Ok(radon_grid(&phi_kernel(n, c0, tau)?, t, xi, grid)?)
}

/// Truncation of the Laguerre-series oracle.
///
/// The k-series Σ_k (−1)/(2k+2n) ∫₀^∞ e^{iλt} L_k^{2n−1}(λ|τ|/2) e^{−λ|τ|/4} λ^{2n−1} dλ
/// diverges termwise (|terms| grow like k^{2n−2}), so it is Abel-summed
/// inside the λ-integral: with x = λ|τ|/2,
///   A_r(x) = Σ_k r^{2k} L_k^{2n−1}(x)/(2k+2n)
///          = ∫₀¹ s^{2n−1}(1−r²s²)^{−2n} exp(−x r²s²/(1−r²s²)) ds,
/// which has a finite limit at r = 1 for x > 0,
///   x^{2n−1} A_1(x) = ½ ∫₀^∞ v^{n−1}(x+v)^{n−1} e^{−v} dv.
/// The λ-integral is then cut at Λ = 2X/|τ| and done by Gauss-Legendre.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesGrid {
    /// Cutoff in x = λ|τ|/2.
    pub x_max: f64,
    pub nodes: usize,
    /// Panels per unit of x, before the oscillation allowance.
    pub density: f64,
}

impl SeriesGrid {
    /// X = 10·2^i, so level 3 reaches e^{−40}.
    pub fn level(i: u32) -> Self {
        SeriesGrid { x_max: 10.0 * 2f64.powi(i as i32), nodes: 16, density: 0.5 }
    }

    pub fn lambda_max(&self, tau: f64) -> f64 {
        2.0 * self.x_max / tau.abs()
    }
}

impl Default for SeriesGrid {
    fn default() -> Self {
        SeriesGrid::level(3)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LaguerreSeries {
    pub value: C,
    /// Size of the discarded λ-tail, bounded by the integrand's envelope.
    pub tail_bound: f64,
    pub lambda_max: f64,
}

/// x^{2n−1} A_1(x) by Gauss-Legendre in v (polynomial × e^{−v}).
fn abel_kernel_scaled(n: usize, x: f64) -> f64 {
    let rule = gl_rule(32);
    let mut acc = 0.0;
    for (lo, hi) in [(0.0, 10.0), (10.0, 30.0), (30.0, 80.0)] {
        for (v, w) in rule.mapped(lo, hi) {
            acc += w * v.powi(n as i32 - 1) * (x + v).powi(n as i32 - 1) * (-v).exp();
        }
    }
    0.5 * acc
}

/// A_r(x) for r < 1 by Gauss-Legendre in s.
pub fn abel_kernel(n: usize, r: f64, x: f64) -> f64 {
    if r >= 1.0 {
        return abel_kernel_scaled(n, x) / x.powi(2 * n as i32 - 1);
    }
    let rule = gl_rule(48);
    let r2 = r * r;
    let edges = [0.0, 0.5, 0.8, 0.95, 1.0];
    let mut acc = 0.0;
    for w in edges.windows(2) {
        for (s, ws) in rule.mapped(w[0], w[1]) {
            let q = r2 * s * s;
            acc += ws * s.powi(2 * n as i32 - 1) * (1.0 - q).powi(-2 * (n as i32)) * (-x * q / (1.0 - q)).exp();
        }
    }
    acc
}

/// −∫₀^Λ e^{iλt} e^{−λ|τ|/4} λ^{2n−1} A_r(λ|τ|/2) dλ; r = 1 is the series
/// the kernel is compared with.
pub fn laguerre_series_abel(n: usize, tau: f64, t: f64, r: f64, grid: &SeriesGrid) -> Result<LaguerreSeries, QuatError> {
    if tau == 0.0 {
        return Err(QuatError::Domain("tau must be nonzero".into()));
    }
    let at = tau.abs();
    let freq = 2.0 * t.abs() / at;
    let panels = ((grid.x_max * (grid.density + freq / PI)).ceil() as usize).max(1);
    let width = grid.x_max / panels as f64;
    let rule = gl_rule(grid.nodes);
    let pre = (2.0 / at).powi(2 * n as i32);
    let integrand = |x: f64| -> C {
        let body = if r >= 1.0 { abel_kernel_scaled(n, x) } else { abel_kernel(n, r, x) * x.powi(2 * n as i32 - 1) };
        C::from_polar(-pre * (-x / 2.0).exp() * body, 2.0 * x * t / at)
    };
    let parts: Vec<C> = (0..panels)
        .into_par_iter()
        .map(|p| {
            let lo = p as f64 * width;
            rule.mapped(lo, lo + width).map(|(x, w)| integrand(x) * w).sum::<C>()
        })
        .collect();
    let value: C = parts.into_iter().sum();
    // ∫_X^∞ e^{−x/2} P(x) dx with P of degree n−1, nonnegative coefficients
    let x = grid.x_max;
    let tail_bound = pre * 2.0 * (-x / 2.0).exp() * abel_kernel_scaled(n, x) * (1.0 + 2.0 * (n as f64) / x.max(1.0));
    Ok(LaguerreSeries { value, tail_bound, lambda_max: grid.lambda_max(tau) })
}

pub fn laguerre_series(n: usize, tau: f64, t: f64, grid: &SeriesGrid) -> Result<LaguerreSeries, QuatError> {
    laguerre_series_abel(n, tau, t, 1.0, grid)
}

/// Σ_{k<K} r^{2k} (−1)/(2k+2n) × (half-line term k), terms from the
/// generating-function closed form.
pub fn laguerre_partial_sum(n: usize, tau: f64, t: f64, r: f64, k_max: usize) -> C {
    (0..k_max)
        .map(|k| laguerre_term_closed(n, k, tau, t) * (-r.powi(2 * k as i32) / (2 * k + 2 * n) as f64))
        .sum()
}

/// Closed form of one half-line term: ∫₀^∞ e^{iλt} L_k^{2n−1}(λ|τ|/2) e^{−λ|τ|/4} λ^{2n−1} dλ
/// = (2n−1)! 4^{2n} C(k+2n−1, k) (−1)^k e^{−i(2k+2n)θ} / ρ^{2n}, where
/// |τ| − 4it = ρ e^{iθ} (Laguerre generating function).
pub fn laguerre_term_closed(n: usize, k: usize, tau: f64, t: f64) -> C {
    let m = 2 * n;
    let z = C::new(tau.abs(), -4.0 * t);
    let (rho, th) = z.to_polar();
    let sg = if k % 2 == 0 { 1.0 } else { -1.0 };
    let b = special_fn::combin::binom((k + m - 1) as i64, k as i64);
    C::from_polar(factorial(m as u32 - 1) * 4f64.powi(m as i32) * b * sg / rho.powi(m as i32), -((2 * k + m) as f64) * th)
}

/// One half-line term by adaptive quadrature (for cross-checking the
/// generating-function form at small k).
pub fn laguerre_term_quad(n: usize, k: usize, tau: f64, t: f64) -> Result<C, QuatError> {
    let alpha = (2 * n - 1) as f64;
    let at = tau.abs();
    // e^{−λ|τ|/4} is below e^{−80} times the polynomial growth past the cut
    let cut = 4.0 * (80.0 + 4.0 * (k + 2 * n) as f64) / at;
    let res = special_fn::quad::adaptive_gk15(
        |lam| {
            let x = lam * at / 2.0;
            let l = special_fn::laguerre(k, alpha as usize, x);
            C::from_polar(l * (-lam * at / 4.0).exp() * lam.powi(2 * n as i32 - 1), lam * t)
        },
        0.0,
        cut,
        1e-300,
        1e-10,
    )?;
    Ok(res.value)
}

#[derive(Debug, Clone, PartialEq)]
pub struct RadonPhiReport {
    pub variant: C0Variant,
    pub tau: f64,
    pub t: f64,
    /// ℛφ(τ, t, ξ) by plane quadrature.
    pub plane: f64,
    /// 4^{2n}(2n−1)!c₀/(τ²+16t²)^n.
    pub closed: f64,
    /// |plane − closed| / |closed|.
    pub plane_vs_closed: f64,
    pub series: LaguerreSeries,
    /// |ℛφ − Σ_k ...| with the complex half-line series, as stated.
    pub residual: f64,
    /// |ℛφ − Re Σ_k ...|.
    pub residual_re: f64,
}

/// ℛφ against the Laguerre series for the configured c₀ variant.
pub fn radon_phi_check(
    config: &QuatKernelConfig,
    tau: f64,
    t: f64,
    radon: &RadonGrid,
    series: &SeriesGrid,
) -> Result<RadonPhiReport, QuatError> {
    let n = config.n;
    let c0 = c0_value(n, config.c0_variant);
    let xi = [0.48, -0.6, 0.64];
    let plane = radon_phi(n, c0, tau, t, &xi, radon)?;
    let closed = varphi_closed(n, c0, tau, t);
    let s = laguerre_series(n, tau, t, series)?;
    Ok(RadonPhiReport {
        variant: config.c0_variant,
        tau,
        t,
        plane,
        closed,
        plane_vs_closed: (plane - closed).abs() / closed.abs(),
        residual: (s.value - plane).norm(),
        residual_re: (s.value.re - plane).abs(),
        series: s,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct VariantResolution {
    pub selected: Option<C0Variant>,
    /// Largest residual_re / |closed| over the sample points, per variant.
    pub relative_re: Vec<(C0Variant, f64)>,
    /// Largest literal residual / |closed|, per variant.
    pub relative_literal: Vec<(C0Variant, f64)>,
}

/// Picks the variant whose φ matches the real part of the Laguerre series
/// to `tol` (relative) at all sample points; `None` unless exactly one does.
pub fn resolve_variant(
    n: usize,
    points: &[(f64, f64)],
    radon: &RadonGrid,
    series: &SeriesGrid,
    tol: f64,
) -> Result<VariantResolution, QuatError> {
    let mut relative_re = Vec::new();
    let mut relative_literal = Vec::new();
    let sums: Vec<LaguerreSeries> = points.iter().map(|&(tau, t)| laguerre_series(n, tau, t, series)).collect::<Result<_, _>>()?;
    for v in C0Variant::ALL {
        let c0 = c0_value(n, v);
        let mut worst_re: f64 = 0.0;
        let mut worst: f64 = 0.0;
        for (&(tau, t), s) in points.iter().zip(&sums) {
            let plane = radon_phi(n, c0, tau, t, &[0.0, 0.0, 1.0], radon)?;
            let scale = varphi_closed(n, c0, tau, t).abs();
            worst_re = worst_re.max((s.value.re - plane).abs() / scale);
            worst = worst.max((s.value - plane).norm() / scale);
        }
        relative_re.push((v, worst_re));
        relative_literal.push((v, worst));
    }
    let ok: Vec<C0Variant> = relative_re.iter().filter(|(_, r)| *r <= tol).map(|(v, _)| *v).collect();
    Ok(VariantResolution { selected: if ok.len() == 1 { Some(ok[0]) } else { None }, relative_re, relative_literal })
}
