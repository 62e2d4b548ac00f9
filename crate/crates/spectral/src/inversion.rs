//! Inversion: f(x) = P⁻¹ ∫ Σ_k ⟨S_{λ,k}, (ℓ_x f)^∨⟩ |λ|ⁿ dλ over ℂ and
//! P_H⁻¹ ∫_{ℝ³} Σ_k ⟨φ_{w,k}, (ℓ_x f)^∨⟩ |w|^{2n} dw over ℍ, truncated to
//! |k| < K and |λ|, |w| ≤ Λ.
//!
//! The k-sum converges slowly (the tail behaves like 1/K for generic f),
//! so truncation is recorded in the result rather than hidden.

use crate::error::SpectralError;
use crate::fpair::FParams;
use crate::pairing::{phi_pair_range, s_pair_range, PairingResult};
use heis_ops::{involution, left_translate_taylor, GroupElement};
use num_complex::Complex64 as C;
use rayon::prelude::*;
use special_fn::quad::{gl_rule, SphereRule};
use std::f64::consts::PI;
use tengstrand::{Field, NProfile, Signature, TestFunction};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InversionGrid {
    /// k runs over −(K−1)..=K−1.
    pub k_max: usize,
    /// Spectral cutoff Λ; `None` means 14√b, past which the center
    /// Fourier factor is below e^{−49}.
    pub lambda_max: Option<f64>,
    pub panels: usize,
    pub nodes: usize,
    /// Gauss-Legendre nodes per angle on S² (quaternionic only).
    pub sphere_per_angle: usize,
    /// Taylor degree of the Gaussian cross factor in ℓ_x f.
    pub translate_degree: u32,
}

impl Default for InversionGrid {
    fn default() -> Self {
        InversionGrid { k_max: 300, lambda_max: None, panels: 60, nodes: 24, sphere_per_angle: 8, translate_degree: 24 }
    }
}

impl InversionGrid {
    pub fn with_k(k_max: usize) -> Self {
        InversionGrid { k_max, ..Default::default() }
    }

    pub fn cutoff(&self, b: f64) -> f64 {
        self.lambda_max.unwrap_or(14.0 * b.sqrt())
    }
}

/// P = (4π)^{n+1} over ℂ, P_H = π (4π)^{2n+2} = (2π)^{2n+3} 2^{2n+1} over ℍ
/// (dw Lebesgue measure on ℝ³).
pub fn inversion_constant(sig: &Signature) -> f64 {
    let n = sig.n() as i32;
    match sig.field {
        Field::Complex => (4.0 * PI).powi(n + 1),
        Field::Quaternionic => PI * (4.0 * PI).powi(2 * n + 2),
    }
}

fn k_list(params: &FParams, k_max: usize) -> Vec<i64> {
    let k = k_max as i64;
    (-(k - 1)..k).filter(|&k| params.laguerre_degree(k) >= 0).collect()
}

/// ∫ Σ_k ⟨·, g⟩ |λ|^{n_F} over the spectral variable, without the constant.
pub fn spectral_integral(g: &TestFunction, grid: &InversionGrid) -> C {
    spectral_integral_with_tail(g, grid).0
}

/// Sums a batch of k-pairings, also returning the size of the outermost
/// terms (|k| = K−1).
fn sum_with_edge(vals: Vec<C>, ks: &[i64], k_edge: i64) -> (C, f64) {
    let mut s = C::new(0.0, 0.0);
    let mut edge = 0.0;
    for (v, k) in vals.into_iter().zip(ks) {
        s += v;
        if k.abs() == k_edge {
            edge += v.norm();
        }
    }
    (s, edge)
}

/// As [`spectral_integral`], plus the integrated magnitude of the last
/// k-terms as a truncation estimate.
pub fn spectral_integral_with_tail(g: &TestFunction, grid: &InversionGrid) -> (C, f64) {
    let prof = NProfile::new(g);
    let params = FParams::from_signature(&g.sig);
    let ks = k_list(&params, grid.k_max);
    let k_edge = grid.k_max as i64 - 1;
    let lam_max = grid.cutoff(g.b);
    let rule = gl_rule(grid.nodes);
    let width = lam_max / grid.panels as f64;
    let nodes: Vec<(f64, f64)> = (0..grid.panels)
        .flat_map(|i| {
            let lo = i as f64 * width;
            rule.mapped(lo, lo + width).collect::<Vec<_>>()
        })
        .collect();
    match g.sig.field {
        Field::Complex => {
            let n = params.n as i32;
            nodes
                .par_iter()
                .map(|&(lam, w)| {
                    let mut acc = (C::new(0.0, 0.0), 0.0);
                    for l in [lam, -lam] {
                        let (s, e) = sum_with_edge(s_pair_range(&prof, l, &ks), &ks, k_edge);
                        acc.0 += s;
                        acc.1 += e;
                    }
                    let wt = w * lam.powi(n);
                    (acc.0 * wt, acc.1 * wt)
                })
                .collect::<Vec<_>>()
                .into_iter()
                .fold((C::new(0.0, 0.0), 0.0), |x, y| (x.0 + y.0, x.1 + y.1))
        }
        Field::Quaternionic => {
            let n2 = params.n as i32;
            let sphere = SphereRule::new(3, grid.sphere_per_angle);
            nodes
                .par_iter()
                .map(|&(r, w)| {
                    let mut acc = (C::new(0.0, 0.0), 0.0);
                    for (dir, &sw) in sphere.points.iter().zip(&sphere.weights) {
                        let wv = [r * dir[0], r * dir[1], r * dir[2]];
                        let (s, e) = sum_with_edge(phi_pair_range(&prof, &wv, &ks), &ks, k_edge);
                        acc.0 += s * sw;
                        acc.1 += e * sw;
                    }
                    let wt = w * r.powi(n2 + 2);
                    (acc.0 * wt, acc.1 * wt)
                })
                .collect::<Vec<_>>()
                .into_iter()
                .fold((C::new(0.0, 0.0), 0.0), |x, y| (x.0 + y.0, x.1 + y.1))
        }
    }
}

/// Reconstructs f(x) from its spherical transform.
pub fn inversion_synthesize(f: &TestFunction, x: &GroupElement, grid: &InversionGrid) -> Result<PairingResult, SpectralError> {
    if grid.k_max == 0 || grid.panels == 0 || grid.nodes == 0 {
        return Err(SpectralError::Domain("empty inversion grid".into()));
    }
    if x.v.len() != f.sig.d_real() || x.zeta.len() != f.sig.center_dim() {
        return Err(SpectralError::Domain("group element does not match the signature".into()));
    }
    let identity = x.v.iter().chain(&x.zeta).all(|c| *c == 0.0);
    let mut notes = Vec::new();
    let g = if identity {
        involution(f)
    } else {
        notes.push(format!("left translate Taylor degree {}", grid.translate_degree));
        involution(&left_translate_taylor(f, x, grid.translate_degree))
    };
    let p = inversion_constant(&f.sig);
    let (raw, tail) = spectral_integral_with_tail(&g, grid);
    let lam_max = grid.cutoff(f.b);
    notes.push(format!("|k| < {}, spectral radius <= {:.3}", grid.k_max, lam_max));
    Ok(PairingResult {
        value: raw / p,
        error_estimate: tail / p,
        k_max: Some(grid.k_max as i64),
        lambda_max: Some(lam_max),
        notes,
        ..Default::default()
    })
}
