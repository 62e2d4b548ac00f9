//! ℛF(t,ξ) = ∫_{ℝ²} F(tξ + u₁e₁ + u₂e₂) du and ℛ*G(z) = ∫_{S²} G(⟨z,ξ⟩,ξ) dξ.

#![allow(non_snake_case)]

use crate::error::RadonError;
use crate::function::{PolyGauss, R3Function};
use num_complex::Complex64 as C;
use rayon::prelude::*;
use special_fn::quad::{gl_rule, tanh_sinh, SphereRule};
use std::f64::consts::PI;

pub type Vec3 = [f64; 3];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadonGrid {
    /// Tensor Gauss-Legendre per axis for the Gaussian family.
    pub plane_panels: usize,
    pub plane_nodes: usize,
    /// Gauss-Legendre nodes per angle of the S² product rule.
    pub sphere_per_angle: usize,
    /// Kernels: GL nodes per geometric radial panel and trapezoid angles.
    pub kernel_radial_nodes: usize,
    pub kernel_angles: usize,
    pub tail_tol: f64,
}

impl Default for RadonGrid {
    fn default() -> Self {
        RadonGrid {
            plane_panels: 4,
            plane_nodes: 16,
            sphere_per_angle: 24,
            kernel_radial_nodes: 16,
            kernel_angles: 64,
            tail_tol: 1e-13,
        }
    }
}

pub fn dot(a: &Vec3, b: &Vec3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub fn cross(a: &Vec3, b: &Vec3) -> Vec3 {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

fn normalize(a: Vec3) -> Vec3 {
    let r = dot(&a, &a).sqrt();
    [a[0] / r, a[1] / r, a[2] / r]
}

fn check_unit(xi: &Vec3) -> Result<(), RadonError> {
    if (dot(xi, xi).sqrt() - 1.0).abs() > 1e-14 {
        return Err(RadonError::Domain(format!("|xi| = {} is not 1", dot(xi, xi).sqrt())));
    }
    Ok(())
}

/// {e₁, e₂} with {ξ, e₁, e₂} orthonormal and right handed.
pub fn completion_basis(xi: &Vec3) -> (Vec3, Vec3) {
    let i = (0..3).min_by(|&a, &b| xi[a].abs().total_cmp(&xi[b].abs())).expect("three axes");
    let mut axis = [0.0; 3];
    axis[i] = 1.0;
    let e1 = normalize(cross(xi, &axis));
    let e2 = cross(xi, &e1);
    (e1, e2)
}

/// Truncation half-width for a polynomial × e^{−a|z|²} family: the
/// Gaussian is below e^{−42} there, padded for the polynomial degree.
pub fn gauss_cutoff(g: &PolyGauss) -> f64 {
    let deg = g.terms.keys().map(|b| b.iter().sum::<u32>()).max().unwrap_or(0);
    ((42.0 + 2.0 * deg as f64) / g.a).sqrt()
}

/// 1-d nodes and weights with the Gaussian weight folded in.
fn gauss_line(g: &PolyGauss, grid: &RadonGrid) -> Vec<(f64, f64)> {
    let l = gauss_cutoff(g);
    let rule = gl_rule(grid.plane_nodes);
    let width = 2.0 * l / grid.plane_panels as f64;
    (0..grid.plane_panels)
        .flat_map(|i| {
            let lo = -l + i as f64 * width;
            rule.mapped(lo, lo + width).map(|(u, w)| (u, w * (-g.a * u * u).exp())).collect::<Vec<_>>()
        })
        .collect()
}

fn radon_gauss(g: &PolyGauss, line: &[(f64, f64)], t: f64, xi: &Vec3, e1: &Vec3, e2: &Vec3) -> f64 {
    let mut acc = 0.0;
    for &(u1, w1) in line {
        let mut row = 0.0;
        for &(u2, w2) in line {
            let z = [
                t * xi[0] + u1 * e1[0] + u2 * e2[0],
                t * xi[1] + u1 * e1[1] + u2 * e2[1],
                t * xi[2] + u1 * e1[2] + u2 * e2[2],
            ];
            row += w2 * g.poly(&z);
        }
        acc += w1 * row;
    }
    acc * (-g.a * t * t).exp()
}

fn radon_kernel(
    f: &(dyn Fn(&Vec3) -> f64 + Send + Sync),
    scale: f64,
    grid: &RadonGrid,
    t: f64,
    xi: &Vec3,
    e1: &Vec3,
    e2: &Vec3,
) -> Result<f64, RadonError> {
    let m = grid.kernel_angles;
    let dirs: Vec<(f64, f64)> = (0..m).map(|j| (2.0 * PI * j as f64 / m as f64).sin_cos()).collect();
    // ∫₀^{2π} F at radius r around the foot point tξ, trapezoid
    let ring = |r: f64| -> f64 {
        let mut s = 0.0;
        for &(sn, cs) in &dirs {
            let z = [
                t * xi[0] + r * (cs * e1[0] + sn * e2[0]),
                t * xi[1] + r * (cs * e1[1] + sn * e2[1]),
                t * xi[2] + r * (cs * e1[2] + sn * e2[2]),
            ];
            s += f(&z);
        }
        s * 2.0 * PI / m as f64
    };
    let rule = gl_rule(grid.kernel_radial_nodes);
    let mut edges = vec![0.0];
    edges.extend((-6..=6).map(|k| scale * 2f64.powi(k)));
    let mut acc = 0.0;
    for w in edges.windows(2) {
        for (r, wt) in rule.mapped(w[0], w[1]) {
            acc += wt * r * ring(r);
        }
    }
    // r = R/u on the tail
    let big = *edges.last().expect("nonempty");
    let tail = tanh_sinh(
        |u: f64, _: f64, _: f64| {
            if u <= 0.0 {
                return C::new(0.0, 0.0);
            }
            let r = big / u;
            C::new(r * ring(r) * big / (u * u), 0.0)
        },
        0.0,
        1.0,
        grid.tail_tol,
    )?;
    Ok(acc + tail.value.re)
}

/// ℛF(t, ξ) with the plane basis {e₁, e₂} supplied.
pub fn radon_with_basis(F: &R3Function, t: f64, xi: &Vec3, e1: &Vec3, e2: &Vec3, grid: &RadonGrid) -> Result<f64, RadonError> {
    check_unit(xi)?;
    match F {
        R3Function::Gauss(g) => Ok(radon_gauss(g, &gauss_line(g, grid), t, xi, e1, e2)),
        R3Function::Kernel { f, certificate } => {
            let cert = certificate.ok_or_else(|| RadonError::Decay("kernel has no decay certificate".into()))?;
            if !(cert.exponent > 2.0) || !(cert.scale > 0.0) {
                return Err(RadonError::Decay(format!(
                    "decay exponent {} (scale {}) does not make plane integrals converge",
                    cert.exponent, cert.scale
                )));
            }
            radon_kernel(f.as_ref(), cert.scale, grid, t, xi, e1, e2)
        }
    }
}

pub fn radon(F: &R3Function, t: f64, xi: &Vec3) -> Result<f64, RadonError> {
    radon_grid(F, t, xi, &RadonGrid::default())
}

pub fn radon_grid(F: &R3Function, t: f64, xi: &Vec3, grid: &RadonGrid) -> Result<f64, RadonError> {
    let (e1, e2) = completion_basis(xi);
    radon_with_basis(F, t, xi, &e1, &e2, grid)
}

/// ℛ*G(z) with the surface measure on S² (total mass 4π).
pub fn dual_radon<G: Fn(f64, &Vec3) -> f64 + Sync>(G: G, z: &Vec3) -> f64 {
    dual_radon_grid(G, z, &RadonGrid::default())
}

pub fn dual_radon_grid<G: Fn(f64, &Vec3) -> f64 + Sync>(G: G, z: &Vec3, grid: &RadonGrid) -> f64 {
    let sphere = SphereRule::new(3, grid.sphere_per_angle);
    sphere.integrate(|p| {
        let xi = [p[0], p[1], p[2]];
        G(dot(z, &xi), &xi)
    })
}

/// Which measure dξ the composite ℛ*ℛ is taken with.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SphereMeasure {
    /// Surface measure, |S²| = 4π; the measure of [`dual_radon`].
    Surface,
    /// Surface measure / 4π. The inversion identity −2πF = Δℛ*ℛF holds
    /// with this one; with the surface measure the constant is −8π².
    Normalized,
}

impl SphereMeasure {
    pub fn factor(&self) -> f64 {
        match self {
            SphereMeasure::Surface => 1.0,
            SphereMeasure::Normalized => 1.0 / (4.0 * PI),
        }
    }
}

/// ℛ*ℛF at several points, sharing the S² rule; parallel over directions,
/// summed in a fixed order.
pub fn dual_of_radon(F: &R3Function, zs: &[Vec3], grid: &RadonGrid) -> Result<Vec<f64>, RadonError> {
    let sphere = SphereRule::new(3, grid.sphere_per_angle);
    let line = match F {
        R3Function::Gauss(g) => Some(gauss_line(g, grid)),
        _ => None,
    };
    let per_dir: Vec<Result<Vec<f64>, RadonError>> = sphere
        .points
        .par_iter()
        .map(|p| {
            let xi = [p[0], p[1], p[2]];
            let (e1, e2) = completion_basis(&xi);
            zs.iter()
                .map(|z| {
                    let t = dot(z, &xi);
                    match (F, &line) {
                        (R3Function::Gauss(g), Some(line)) => Ok(radon_gauss(g, line, t, &xi, &e1, &e2)),
                        _ => radon_with_basis(F, t, &xi, &e1, &e2, grid),
                    }
                })
                .collect()
        })
        .collect();
    let mut out = vec![0.0; zs.len()];
    for (vals, w) in per_dir.into_iter().zip(&sphere.weights) {
        for (o, v) in out.iter_mut().zip(vals?) {
            *o += w * v;
        }
    }
    Ok(out)
}

/// Δ(ℛ*ℛF)(z) by 4th-order central differences with step h, one Richardson
/// step against h/2 (error O(h⁶) plus a roundoff floor near 1e-9 at h = 1e-2).
pub fn laplacian_dual_radon(F: &R3Function, z: &Vec3, h: f64, measure: SphereMeasure, grid: &RadonGrid) -> Result<f64, RadonError> {
    let mut pts = vec![*z];
    for step in [h, h / 2.0] {
        for axis in 0..3 {
            for k in [-2.0, -1.0, 1.0, 2.0] {
                let mut p = *z;
                p[axis] += k * step;
                pts.push(p);
            }
        }
    }
    let v = dual_of_radon(F, &pts, grid)?;
    let stencil = |base: usize, step: f64| -> f64 {
        let mut acc = 0.0;
        for axis in 0..3 {
            let i = base + 4 * axis;
            acc += -v[i] + 16.0 * v[i + 1] - 30.0 * v[0] + 16.0 * v[i + 2] - v[i + 3];
        }
        acc / (12.0 * step * step)
    };
    let coarse = stencil(1, h);
    let fine = stencil(13, h / 2.0);
    Ok((16.0 * fine - coarse) / 15.0 * measure.factor())
}

/// |Δ(ℛ*ℛF)(z) + 2πF(z)| with the normalized sphere measure, h = 1e-2.
pub fn inversion_residual(F: &R3Function, z: &Vec3) -> Result<f64, RadonError> {
    inversion_residual_with(F, z, SphereMeasure::Normalized, &RadonGrid::default())
}

pub fn inversion_residual_with(F: &R3Function, z: &Vec3, measure: SphereMeasure, grid: &RadonGrid) -> Result<f64, RadonError> {
    let lap = laplacian_dual_radon(F, z, 1e-2, measure, grid)?;
    Ok((lap + 2.0 * PI * F.eval(z)).abs())
}

/// ∫_ℝ ℛF(t,ξ) dt for the Gaussian family, Gauss-Legendre in t.
pub fn radon_mass(g: &PolyGauss, xi: &Vec3, grid: &RadonGrid) -> Result<f64, RadonError> {
    check_unit(xi)?;
    let line = gauss_line(g, grid);
    let (e1, e2) = completion_basis(xi);
    let l = gauss_cutoff(g);
    let rule = gl_rule(grid.plane_nodes);
    let width = 2.0 * l / grid.plane_panels as f64;
    let mut acc = 0.0;
    for i in 0..grid.plane_panels {
        let lo = -l + i as f64 * width;
        for (t, w) in rule.mapped(lo, lo + width) {
            acc += w * radon_gauss(g, &line, t, xi, &e1, &e2);
        }
    }
    Ok(acc)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DualityReport {
    /// ⟨ℛF, G⟩ over ℝ × S².
    pub lhs: f64,
    /// ⟨F, ℛ*G⟩ over ℝ³.
    pub rhs: f64,
}

impl DualityReport {
    pub fn gap(&self) -> f64 {
        (self.lhs - self.rhs).abs()
    }
}

/// Both sides of ⟨ℛF, G⟩ = ⟨F, ℛ*G⟩ for F in the Gaussian family; G is
/// assumed to be bounded, so the same truncation length serves both sides.
pub fn duality<G: Fn(f64, &Vec3) -> f64 + Sync>(g: &PolyGauss, G: G, grid: &RadonGrid) -> Result<DualityReport, RadonError> {
    let sphere = SphereRule::new(3, grid.sphere_per_angle);
    let line = gauss_line(g, grid);
    let l = gauss_cutoff(g);
    let rule = gl_rule(grid.plane_nodes);
    let width = 2.0 * l / grid.plane_panels as f64;
    let tnodes: Vec<(f64, f64)> = (0..grid.plane_panels)
        .flat_map(|i| {
            let lo = -l + i as f64 * width;
            rule.mapped(lo, lo + width).collect::<Vec<_>>()
        })
        .collect();
    let lhs_dirs: Vec<f64> = sphere
        .points
        .par_iter()
        .map(|p| {
            let xi = [p[0], p[1], p[2]];
            let (e1, e2) = completion_basis(&xi);
            tnodes.iter().map(|&(t, w)| w * radon_gauss(g, &line, t, &xi, &e1, &e2) * G(t, &xi)).sum::<f64>()
        })
        .collect();
    let lhs = lhs_dirs.iter().zip(&sphere.weights).map(|(v, w)| v * w).sum();

    // ⟨F, ℛ*G⟩: tensor rule in z with the Gaussian folded into the weights
    let rows: Vec<f64> = line
        .par_iter()
        .map(|&(x, wx)| {
            let mut acc = 0.0;
            for &(y, wy) in &line {
                for &(zc, wz) in &line {
                    let z = [x, y, zc];
                    let dual = sphere.integrate(|p| {
                        let xi = [p[0], p[1], p[2]];
                        G(dot(&z, &xi), &xi)
                    });
                    acc += wy * wz * g.poly(&z) * dual;
                }
            }
            wx * acc
        })
        .collect();
    let rhs = rows.iter().sum();
    Ok(DualityReport { lhs, rhs })
}
