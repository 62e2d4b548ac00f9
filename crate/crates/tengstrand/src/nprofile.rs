//! Exact N-transform of the polynomial × Gaussian family.
//!
//! With ρ = |v|² the sphere integrals reduce to monomial moments and the
//! radial integral to incomplete Gamma sums, so for each center monomial
//! Nf(τ, ·) is a polynomial times e^{−a|τ|} on either side of τ = 0.

use crate::error::TengError;
use crate::signature::Signature;
use crate::testfn::{Multi, TestFunction};
use num_complex::Complex64 as C;
use special_fn::combin::{binom, factorial};
use special_fn::sphere::monomial_moment;

/// Below this value of a|τ| the regularized profile is summed as a Taylor
/// remainder instead of a difference of nearly equal numbers.
const SERIES_SWITCH: f64 = 3.0;
const SERIES_TERMS: usize = 64;

/// One center monomial: t^center e^{−b|t|²} × (pos(τ)e^{−aτ} for τ ≥ 0,
/// neg(τ)e^{aτ} for τ < 0). Polynomials are stored lowest degree first.
#[derive(Debug, Clone, PartialEq)]
pub struct NSector {
    pub center: Multi,
    pub pos: Vec<C>,
    pub neg: Vec<C>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct NProfile {
    pub sig: Signature,
    pub a: f64,
    pub b: f64,
    pub sectors: Vec<NSector>,
}

fn add_at(v: &mut Vec<C>, i: usize, c: C) {
    if v.len() <= i {
        v.resize(i + 1, C::new(0.0, 0.0));
    }
    v[i] += c;
}

fn poly_eval(p: &[C], x: f64) -> C {
    p.iter().rev().fold(C::new(0.0, 0.0), |acc, c| acc * x + c)
}

impl NProfile {
    pub fn new(f: &TestFunction) -> Self {
        let sig = f.sig;
        let (d1, d2) = sig.block_dims();
        let (pp, qq) = sig.half_blocks();
        let a = f.a;
        let mut sectors: Vec<NSector> = Vec::new();
        for (m, c) in &f.terms {
            let g1 = &m[..d1];
            let g2 = &m[d1..d1 + d2];
            let m1 = monomial_moment(g1);
            let m2 = monomial_moment(g2);
            if m1 == 0.0 || m2 == 0.0 {
                continue;
            }
            let k1 = g1.iter().sum::<u32>() as usize / 2;
            let k2 = g2.iter().sum::<u32>() as usize / 2;
            let big_a = k1 + pp - 1;
            let big_b = k2 + qq - 1;
            let pre = c * m1 * m2 * 2f64.powi(-((k1 + k2) as i32));
            let center: Multi = m[d1 + d2..].to_vec();
            let idx = match sectors.iter().position(|s| s.center == center) {
                Some(i) => i,
                None => {
                    sectors.push(NSector { center, pos: Vec::new(), neg: Vec::new() });
                    sectors.len() - 1
                }
            };
            let sec = &mut sectors[idx];
            // τ ≥ 0: ρ = τ + s, (2τ + s)^A s^B e^{−a(τ+s)}
            for i in 0..=big_a {
                let w = binom(big_a as i64, i as i64)
                    * 2f64.powi((big_a - i) as i32)
                    * factorial((i + big_b) as u32)
                    / a.powi((i + big_b + 1) as i32);
                add_at(&mut sec.pos, big_a - i, pre * w);
            }
            // τ < 0: ρ = −τ + s, s^A (s − 2τ)^B
            for i in 0..=big_b {
                let w = binom(big_b as i64, i as i64)
                    * (-2f64).powi((big_b - i) as i32)
                    * factorial((i + big_a) as u32)
                    / a.powi((i + big_a + 1) as i32);
                add_at(&mut sec.neg, big_b - i, pre * w);
            }
        }
        NProfile { sig, a, b: f.b, sectors }
    }

    pub fn is_zero(&self) -> bool {
        self.sectors.is_empty()
    }

    /// n_eff − 2, the highest order at which Nf is two-sided smooth.
    pub fn max_jet_order(&self) -> usize {
        self.sig.n_eff() - 2
    }

    pub fn center_factor(&self, sec: &NSector, t: &[f64]) -> f64 {
        let mut w = 1.0;
        let mut t2 = 0.0;
        for (x, &e) in t.iter().zip(&sec.center) {
            w *= x.powi(e as i32);
            t2 += x * x;
        }
        w * (-self.b * t2).exp()
    }

    /// The τ-dependent factor of one sector.
    pub fn sector_tau(&self, sec: &NSector, tau: f64) -> C {
        if tau >= 0.0 {
            poly_eval(&sec.pos, tau) * (-self.a * tau).exp()
        } else {
            poly_eval(&sec.neg, tau) * (self.a * tau).exp()
        }
    }

    pub fn eval(&self, tau: f64, t: &[f64]) -> C {
        self.sectors
            .iter()
            .map(|s| self.sector_tau(s, tau) * self.center_factor(s, t))
            .sum()
    }

    /// m-th Taylor coefficient at 0 of pos(τ)e^{−aτ} (positive side) or
    /// neg(τ)e^{aτ} (negative side).
    pub fn taylor_coeff(&self, sec: &NSector, positive: bool, m: usize) -> C {
        let (p, r) = if positive { (&sec.pos, -self.a) } else { (&sec.neg, self.a) };
        let mut acc = C::new(0.0, 0.0);
        for (i, c) in p.iter().enumerate().take(m + 1) {
            let k = m - i;
            acc += c * (r.powi(k as i32) / factorial(k as u32));
        }
        acc
    }

    /// One-sided ∂_τ^j Nf(0±, t), exact.
    pub fn one_sided_derivative(&self, j: usize, t: &[f64], positive: bool) -> C {
        let fj = factorial(j as u32);
        self.sectors
            .iter()
            .map(|s| self.taylor_coeff(s, positive, j) * (fj * self.center_factor(s, t)))
            .sum()
    }

    /// Two-sided ∂_τ^j Nf(0, t) for j ≤ n_eff − 2.
    pub fn jet(&self, j: usize, t: &[f64]) -> Result<C, TengError> {
        let max = self.max_jet_order();
        if j > max {
            return Err(TengError::Order { j, max });
        }
        Ok(self.one_sided_derivative(j, t, true))
    }

    /// Largest mismatch between one-sided Taylor coefficients of orders
    /// 0..=n_eff−2, relative to the largest of them in the same sector.
    pub fn jet_mismatch(&self) -> f64 {
        let mut worst: f64 = 0.0;
        let nj = self.max_jet_order();
        for s in &self.sectors {
            let pairs: Vec<(C, C)> = (0..=nj)
                .map(|m| (self.taylor_coeff(s, true, m), self.taylor_coeff(s, false, m)))
                .collect();
            let scale = pairs
                .iter()
                .map(|(p, q)| p.norm().max(q.norm()))
                .fold(1e-300, f64::max);
            for (p, q) in pairs {
                worst = worst.max((p - q).norm() / scale);
            }
        }
        worst
    }

    /// G for one sector: the τ-factor minus its Taylor polynomial of
    /// degree n_eff − 2.
    pub fn g_sector(&self, sec: &NSector, tau: f64) -> C {
        let positive = tau >= 0.0;
        let nj = self.max_jet_order();
        if self.a * tau.abs() < SERIES_SWITCH {
            let mut acc = C::new(0.0, 0.0);
            let mut pw = tau.powi((nj + 1) as i32);
            for m in nj + 1..nj + 1 + SERIES_TERMS {
                acc += self.taylor_coeff(sec, positive, m) * pw;
                pw *= tau;
            }
            acc
        } else {
            let mut taylor = C::new(0.0, 0.0);
            for m in (0..=nj).rev() {
                taylor = taylor * tau + self.taylor_coeff(sec, positive, m);
            }
            self.sector_tau(sec, tau) - taylor
        }
    }

    /// G_f(τ, t) = Nf(τ, t) − Σ_{j ≤ n_eff−2} ∂_τ^j Nf(0, t) τ^j / j!.
    pub fn g(&self, tau: f64, t: &[f64]) -> C {
        self.sectors
            .iter()
            .map(|s| self.g_sector(s, tau) * self.center_factor(s, t))
            .sum()
    }

    /// ∫_ℝ Nf(τ, t) dτ, exact.
    pub fn tau_integral(&self, t: &[f64]) -> C {
        let a = self.a;
        self.sectors
            .iter()
            .map(|s| {
                let mut acc = C::new(0.0, 0.0);
                for (m, c) in s.pos.iter().enumerate() {
                    acc += c * (factorial(m as u32) / a.powi(m as i32 + 1));
                }
                for (m, c) in s.neg.iter().enumerate() {
                    let sg = if m % 2 == 0 { 1.0 } else { -1.0 };
                    acc += c * (sg * factorial(m as u32) / a.powi(m as i32 + 1));
                }
                acc * self.center_factor(s, t)
            })
            .sum()
    }

    /// Profile of (τ, t) ↦ Nf(−τ, −t).
    pub fn reflected(&self) -> NProfile {
        let flip = |p: &[C]| -> Vec<C> {
            p.iter()
                .enumerate()
                .map(|(m, c)| if m % 2 == 1 { -c } else { *c })
                .collect()
        };
        let sectors = self
            .sectors
            .iter()
            .map(|s| {
                let deg: u32 = s.center.iter().sum();
                let sg = if deg % 2 == 1 { -1.0 } else { 1.0 };
                NSector {
                    center: s.center.clone(),
                    pos: flip(&s.neg).into_iter().map(|c| c * sg).collect(),
                    neg: flip(&s.pos).into_iter().map(|c| c * sg).collect(),
                }
            })
            .collect();
        NProfile { sig: self.sig, a: self.a, b: self.b, sectors }
    }
}
