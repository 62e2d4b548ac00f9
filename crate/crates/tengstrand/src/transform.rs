//! Quadrature routes for M and N, finite-difference τ-derivatives and the
//! measured calibration constant κ.

use crate::error::TengError;
use crate::nprofile::NProfile;
use crate::signature::Signature;
use crate::testfn::TestFunction;
use num_complex::Complex64 as C;
use special_fn::quad::{gl_rule, SphereRule};
use special_fn::richardson::limit_to_zero;
use special_fn::sum::NeumaierC;
use std::collections::HashMap;
use std::f64::consts::PI;

/// Radial truncation in units of 1/a.
pub const RHO_SPAN: f64 = 40.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadGrid {
    /// Gauss-Legendre points per polar angle (azimuth gets twice this).
    pub per_angle: usize,
    pub radial_panels: usize,
    pub radial_nodes: usize,
}

impl QuadGrid {
    pub fn coarse() -> Self {
        QuadGrid { per_angle: 16, radial_panels: 8, radial_nodes: 16 }
    }

    pub fn fine() -> Self {
        QuadGrid { per_angle: 64, radial_panels: 32, radial_nodes: 32 }
    }

    pub fn doubled(&self) -> Self {
        QuadGrid {
            per_angle: 2 * self.per_angle,
            radial_panels: 2 * self.radial_panels,
            radial_nodes: self.radial_nodes,
        }
    }
}

impl Default for QuadGrid {
    fn default() -> Self {
        QuadGrid { per_angle: 32, radial_panels: 16, radial_nodes: 32 }
    }
}

/// ∫_{S^{d−1}} ω^γ by the hyperspherical product rule.
///
/// In the coordinates ω_{k+1} = cos θ_k, (ω_1..ω_k) scaled by sin θ_k,
/// a monomial factors over the angles, so the full product rule reduces
/// to one 1-D sum per angle with the same nodes.
pub fn sphere_moment_quad(gamma: &[u32], per_angle: usize) -> f64 {
    let d = gamma.len();
    if d == 1 {
        let e = gamma[0];
        return if e % 2 == 0 { 2.0 } else { 0.0 };
    }
    let naz = 2 * per_angle;
    let mut az = 0.0;
    for j in 0..naz {
        let phi = 2.0 * PI * (j as f64 + 0.5) / naz as f64;
        az += phi.cos().powi(gamma[0] as i32) * phi.sin().powi(gamma[1] as i32);
    }
    let mut total = az * 2.0 * PI / naz as f64;
    let rule = gl_rule(per_angle);
    let mut inner: u32 = gamma[0] + gamma[1];
    for k in 2..d {
        let mut s = 0.0;
        for (th, w) in rule.mapped(0.0, PI) {
            let (sn, cs) = th.sin_cos();
            s += w * sn.powi((k - 1) as i32 + inner as i32) * cs.powi(gamma[k] as i32);
        }
        total *= s;
        inner += gamma[k];
    }
    total
}

fn split_moments(f: &TestFunction, per_angle: usize) -> HashMap<Vec<u32>, f64> {
    let (d1, d2) = f.sig.block_dims();
    let mut cache: HashMap<Vec<u32>, f64> = HashMap::new();
    for m in f.terms.keys() {
        for g in [&m[..d1], &m[d1..d1 + d2]] {
            cache
                .entry(g.to_vec())
                .or_insert_with(|| sphere_moment_quad(g, per_angle));
        }
    }
    cache
}

fn m_eval(f: &TestFunction, moments: &HashMap<Vec<u32>, f64>, rho: f64, tau: f64, t: &[f64]) -> C {
    let (d1, d2) = f.sig.block_dims();
    let r1 = ((rho + tau) / 2.0).max(0.0).sqrt();
    let r2 = ((rho - tau) / 2.0).max(0.0).sqrt();
    let t2: f64 = t.iter().map(|x| x * x).sum();
    let mut acc = NeumaierC::default();
    for (m, c) in &f.terms {
        let g1 = &m[..d1];
        let g2 = &m[d1..d1 + d2];
        let w = moments[g1] * moments[g2];
        if w == 0.0 {
            continue;
        }
        let mut term = w * r1.powi(g1.iter().sum::<u32>() as i32) * r2.powi(g2.iter().sum::<u32>() as i32);
        for (x, &e) in t.iter().zip(&m[d1 + d2..]) {
            term *= x.powi(e as i32);
        }
        acc.add(c * term);
    }
    acc.total() * (-f.a * rho - f.b * t2).exp()
}

/// Mf(ρ, τ) at center point t, with an error estimate from a doubled grid.
pub fn m_transform(f: &TestFunction, rho: f64, tau: f64, t: &[f64], grid: &QuadGrid) -> Result<(C, f64), TengError> {
    if rho < tau.abs() {
        return Err(TengError::Domain(format!("M needs rho >= |tau|, got rho={rho}, tau={tau}")));
    }
    let v1 = m_eval(f, &split_moments(f, grid.per_angle), rho, tau, t);
    let v2 = m_eval(f, &split_moments(f, 2 * grid.per_angle), rho, tau, t);
    Ok((v1, (v1 - v2).norm()))
}

fn n_eval(f: &TestFunction, moments: &HashMap<Vec<u32>, f64>, tau: f64, t: &[f64], grid: &QuadGrid) -> C {
    let (pp, qq) = f.sig.half_blocks();
    let lo = tau.abs();
    let hi = lo + RHO_SPAN / f.a;
    let rule = gl_rule(grid.radial_nodes);
    let width = (hi - lo) / grid.radial_panels as f64;
    let mut acc = NeumaierC::default();
    for k in 0..grid.radial_panels {
        let a = lo + k as f64 * width;
        for (rho, w) in rule.mapped(a, a + width) {
            let weight = (rho + tau).powi(pp as i32 - 1) * (rho - tau).powi(qq as i32 - 1);
            acc.add(m_eval(f, moments, rho, tau, t) * (w * weight));
        }
    }
    acc.total()
}

/// Nf(τ, t) = ∫_{|τ|}^∞ Mf(ρ, τ)(ρ+τ)^{p′−1}(ρ−τ)^{q′−1} dρ by quadrature,
/// with the difference to a doubled grid as error estimate.
pub fn n_transform(f: &TestFunction, tau: f64, t: &[f64], grid: &QuadGrid) -> (C, f64) {
    let g2 = grid.doubled();
    let v1 = n_eval(f, &split_moments(f, grid.per_angle), tau, t, grid);
    let v2 = n_eval(f, &split_moments(f, g2.per_angle), tau, t, &g2);
    (v2, (v1 - v2).norm())
}

/// N of an arbitrary integrable function of v (center already fixed),
/// by the full product rule on both spheres. The cost is the product of
/// the two sphere grids, so this is meant for small blocks.
pub fn n_transform_fn<F: Fn(&[f64]) -> C>(sig: &Signature, f: F, tau: f64, rate: f64, grid: &QuadGrid) -> C {
    let (d1, d2) = sig.block_dims();
    let (pp, qq) = sig.half_blocks();
    let s1 = SphereRule::new(d1, grid.per_angle);
    let s2 = SphereRule::new(d2, grid.per_angle);
    let lo = tau.abs();
    let hi = lo + RHO_SPAN / rate;
    let rule = gl_rule(grid.radial_nodes);
    let width = (hi - lo) / grid.radial_panels as f64;
    let mut v = vec![0.0; d1 + d2];
    let mut acc = NeumaierC::default();
    for k in 0..grid.radial_panels {
        let a = lo + k as f64 * width;
        for (rho, w) in rule.mapped(a, a + width) {
            let r1 = ((rho + tau) / 2.0).max(0.0).sqrt();
            let r2 = ((rho - tau) / 2.0).max(0.0).sqrt();
            let weight = w * (rho + tau).powi(pp as i32 - 1) * (rho - tau).powi(qq as i32 - 1);
            let mut inner = NeumaierC::default();
            for (o1, w1) in s1.points.iter().zip(&s1.weights) {
                for (x, o) in v[..d1].iter_mut().zip(o1) {
                    *x = r1 * o;
                }
                for (o2, w2) in s2.points.iter().zip(&s2.weights) {
                    for (x, o) in v[d1..].iter_mut().zip(o2) {
                        *x = r2 * o;
                    }
                    inner.add(f(&v) * (w1 * w2));
                }
            }
            acc.add(inner.total() * weight);
        }
    }
    acc.total()
}

/// ∂_τ^j Nf(0, t) by central differences of the exact profile,
/// extrapolated in h. Valid for j ≤ n_eff − 2 where Nf is two-sided
/// smooth; the first non-smooth order only enters as a power of h, which
/// the extrapolation removes.
pub fn n_tau_derivative_at_zero(f: &TestFunction, j: usize, t: &[f64]) -> Result<(C, f64), TengError> {
    let prof = NProfile::new(f);
    let max = prof.max_jet_order();
    if j > max {
        return Err(TengError::Order { j, max });
    }
    let h0 = 0.25 / f.a;
    let central = |h: f64| {
        let mut acc = C::new(0.0, 0.0);
        for i in 0..=j {
            let sg = if i % 2 == 0 { 1.0 } else { -1.0 };
            let node = (j as f64 / 2.0 - i as f64) * h;
            acc += prof.eval(node, t) * (sg * special_fn::combin::binom(j as i64, i as i64));
        }
        acc / h.powi(j as i32)
    };
    Ok(limit_to_zero(central, h0, 8))
}

/// κ = ∫_{𝔽ⁿ} f(v, t) dv / ∫_ℝ Nf(τ, t) dτ. Measured, never folded into N.
pub fn kappa(f: &TestFunction, t: &[f64]) -> C {
    NProfile::new(f).tau_integral(t).inv() * f.v_integral(t)
}

/// The closed form of κ for the change of variables (u, w) ↦ (ρ, τ):
/// the Jacobian contributes 2^{−n_eff−1}.
pub fn kappa_closed_form(sig: &Signature) -> f64 {
    2f64.powi(-(sig.n_eff() as i32) - 1)
}
