//! Polar quadrature over the half plane τ > 0 of the (τ, t) plane.
//!
//! τ = ρ cos θ, t = −ρ sin θ / 4, so τ − 4it = ρe^{iθ} and
//! dτ dt = (ρ/4) dρ dθ. The kernels of Φ are ρ^{−n} times a phase, and
//! G_f vanishes to order n−1 at the origin, so the integrand stays
//! bounded there. The angular rule is split at θ = 0 because the literal
//! kernel on τ < 0 jumps across t = 0, where τ ± 4it meets the branch cut
//! of the principal logarithm.

use num_complex::Complex64 as C;
use rayon::prelude::*;
use special_fn::quad::gl_rule;
use std::f64::consts::FRAC_PI_2;

/// Panel edges in ρ for a = b = 1; scaled by max(1/a, 1/√b).
const EDGES: [f64; 11] = [0.0, 1e-3, 1e-2, 0.1, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0, 32.0];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PhiGrid {
    /// Gauss-Legendre nodes per ρ panel.
    pub rho_nodes: usize,
    /// Nodes for the ρ ∈ (32, ∞) tail, mapped from u = 32/ρ.
    pub tail_nodes: usize,
    /// Angular nodes, split evenly between θ < 0 and θ > 0.
    pub theta_nodes: usize,
}

impl Default for PhiGrid {
    fn default() -> Self {
        PhiGrid { rho_nodes: 64, tail_nodes: 64, theta_nodes: 200 }
    }
}

impl PhiGrid {
    /// Level 0 is very coarse; each level doubles every node count.
    pub fn level(i: u32) -> Self {
        let s = 1usize << i;
        PhiGrid { rho_nodes: 2 * s, tail_nodes: 2 * s, theta_nodes: 6 * s }
    }

    pub fn coarser(&self) -> Self {
        PhiGrid {
            rho_nodes: (self.rho_nodes / 2).max(1),
            tail_nodes: (self.tail_nodes / 2).max(1),
            theta_nodes: (self.theta_nodes / 2).max(1),
        }
    }
}

/// A point of the half plane with its full weight (including ρ/4).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolarNode {
    pub rho: f64,
    pub theta: f64,
    pub s: f64,
    pub t: f64,
    pub weight: f64,
}

pub struct PolarRule {
    /// Nodes grouped by ρ.
    pub rings: Vec<Vec<PolarNode>>,
    pub scale: f64,
}

impl PolarRule {
    /// `a`, `b` are the decay rates of the test family in τ and t.
    pub fn new(grid: &PhiGrid, a: f64, b: f64) -> Self {
        let scale = (1.0 / a).max(1.0 / b.sqrt());
        let t_cut = 8.0 / b.sqrt();
        let rule = gl_rule(grid.rho_nodes);
        let mut radial: Vec<(f64, f64)> = Vec::new();
        for w in EDGES.windows(2) {
            radial.extend(rule.mapped(w[0] * scale, w[1] * scale));
        }
        let r_far = EDGES[EDGES.len() - 1] * scale;
        for (u, wu) in gl_rule(grid.tail_nodes).mapped(0.0, 1.0) {
            radial.push((r_far / u, wu * r_far / (u * u)));
        }
        let trule = gl_rule((grid.theta_nodes / 2).max(1));
        let rings = radial
            .into_iter()
            .map(|(rho, wr)| {
                let th_c = if rho <= 4.0 * t_cut { FRAC_PI_2 } else { (4.0 * t_cut / rho).asin() };
                trule
                    .mapped(-th_c, 0.0)
                    .chain(trule.mapped(0.0, th_c))
                    .map(|(theta, wt)| PolarNode {
                        rho,
                        theta,
                        s: rho * theta.cos(),
                        t: -rho * theta.sin() / 4.0,
                        weight: wr * wt * rho / 4.0,
                    })
                    .collect()
            })
            .collect();
        PolarRule { rings, scale }
    }

    /// Σ weight · f(node), parallel over rings with an ordered reduction.
    pub fn integrate<F: Fn(&PolarNode) -> C + Sync>(&self, f: F) -> C {
        let parts: Vec<C> = self
            .rings
            .par_iter()
            .map(|ring| ring.iter().map(|nd| f(nd) * nd.weight).sum())
            .collect();
        parts.into_iter().sum()
    }
}
