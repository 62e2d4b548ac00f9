//! The quaternionic pairing exactly as displayed in closed form:
//!
//! Φ₁₁: −4^{2n+2} n (2n−1)! c₀ ⟨(τ²+16|z|²)^{−n−1}, sgn τ G_f(τ,z)⟩,
//! Φ₁₂: odd l ≤ 2n−2, j = 1..l+1, weights 2^{−(2n−2l−j−3)} c_j C(2n−j−1, l−j−1),
//! and the two finite k-blocks −2q < k < 0 and 0 ≤ k < 2q, all against
//! D_r = (−Δ)^{(2n−r−2)/2} ∂_τ^r Nf(0,·) at z = 0.
//! No normalizing constant is applied. The k with 2k + 2(p−q) = 0 has a
//! vanishing denominator and is left out.

use crate::config::QuatKernelConfig;
use crate::error::QuatError;
use fsol_complex::{cj_pm, Sign};
use num_complex::Complex64 as C;
use radon3::{fractional_laplacian_at, PolyGauss, R3Function};
use rayon::prelude::*;
use spectral::PairingResult;
use special_fn::combin::{binom, binom_triangle, factorial};
use special_fn::quad::{adaptive_semi_infinite, gl_rule};
use special_fn::sphere::monomial_moment;
use tengstrand::{Field, NProfile, TestFunction};

fn check(f: &TestFunction, config: &QuatKernelConfig) -> Result<(), QuatError> {
    if f.sig.field != Field::Quaternionic {
        return Err(QuatError::Domain("expected a quaternionic test function".into()));
    }
    if f.sig.n() != config.n {
        return Err(QuatError::Domain(format!("config has n = {}, test function n = {}", config.n, f.sig.n())));
    }
    Ok(())
}

fn sgn(e: i64) -> f64 {
    if e.rem_euclid(2) == 0 {
        1.0
    } else {
        -1.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Phi11Grid {
    /// Gauss-Legendre nodes per τ panel and in the mapped tail.
    pub tau_nodes: usize,
}

impl Default for Phi11Grid {
    fn default() -> Self {
        Phi11Grid { tau_nodes: 16 }
    }
}

impl Phi11Grid {
    pub fn refined(&self) -> Self {
        Phi11Grid { tau_nodes: 2 * self.tau_nodes }
    }
}

/// ∫₀^∞ r^{2+m} e^{−br²} (τ²+16r²)^{−n−1} dr, by x = 4r/|τ|.
fn radial_factor(n: usize, m: u32, b: f64, tau: f64) -> Result<f64, QuatError> {
    let at = tau.abs();
    let c = b * tau * tau / 16.0;
    let e = 2 + m as i32;
    let res = adaptive_semi_infinite(
        |x| C::new(x.powi(e) * (-c * x * x).exp() / (1.0 + x * x).powi(n as i32 + 1), 0.0),
        0.0,
        1e-300,
        1e-13,
    )?;
    Ok((at / 4.0).powi(3 + m as i32) * at.powi(-2 * n as i32 - 2) * res.value.re)
}

/// τ nodes on (0, ∞): geometric panels up to 32/a, then τ = 32/(a u).
fn tau_nodes(a: f64, grid: &Phi11Grid) -> Vec<(f64, f64)> {
    let s0 = 1.0 / a;
    let rule = gl_rule(grid.tau_nodes);
    let mut edges = vec![0.0];
    for k in -8..=5 {
        edges.push(s0 * 2f64.powi(k));
    }
    let mut out = Vec::new();
    for w in edges.windows(2) {
        out.extend(rule.mapped(w[0], w[1]));
    }
    let t_max = *edges.last().expect("nonempty");
    for (u, wu) in rule.mapped(0.0, 1.0) {
        out.push((t_max / u, wu * t_max / (u * u)));
    }
    out
}

/// Φ₁₁ by τ quadrature with the z-integral reduced to a radial factor
/// and monomial moments on S². Needs the resolved c₀.
pub fn phi11_quat_pair(f: &TestFunction, config: &QuatKernelConfig, grid: &Phi11Grid) -> Result<PairingResult, QuatError> {
    check(f, config)?;
    let c0 = config.resolved_c0()?;
    let n = config.n;
    let prof = NProfile::new(f);
    let pre = -4f64.powi(2 * n as i32 + 2) * n as f64 * factorial(2 * n as u32 - 1) * c0;
    let nodes = tau_nodes(prof.a, grid);
    let mut value = C::new(0.0, 0.0);
    let mut guard: f64 = 0.0;
    for sec in &prof.sectors {
        let moment = monomial_moment(&sec.center);
        if moment == 0.0 {
            continue;
        }
        let m: u32 = sec.center.iter().sum();
        let parts: Vec<Result<(C, f64), QuatError>> = nodes
            .par_iter()
            .map(|&(tau, w)| {
                let j = radial_factor(n, m, prof.b, tau)?;
                let v = (prof.g_sector(sec, tau) - prof.g_sector(sec, -tau)) * j;
                Ok((v * w, if tau < 1e-2 / prof.a { v.norm() } else { 0.0 }))
            })
            .collect();
        let mut acc = C::new(0.0, 0.0);
        for p in parts {
            let (v, g) = p?;
            acc += v;
            guard = guard.max(g * moment.abs());
        }
        value += acc * moment;
    }
    Ok(PairingResult {
        value: value * pre,
        notes: vec![
            format!("tau rule: 14 geometric panels + tail, {} nodes each", grid.tau_nodes),
            format!("integrability guard: sup of the tau-integrand below 1e-2/a: {guard:.3e}"),
        ],
        ..Default::default()
    })
}

/// z ↦ ∂_τ^r Nf(0, z), split into real and imaginary parts.
pub fn jet_profile(prof: &NProfile, r: usize) -> (PolyGauss, PolyGauss) {
    let mut re = PolyGauss::zero(prof.b);
    let mut im = PolyGauss::zero(prof.b);
    let fr = factorial(r as u32);
    for sec in &prof.sectors {
        let c = prof.taylor_coeff(sec, true, r) * fr;
        let beta = [sec.center[0], sec.center[1], sec.center[2]];
        re.add_term(beta, c.re);
        im.add_term(beta, c.im);
    }
    (re, im)
}

/// D_r = (−Δ)^{(2n−r−2)/2} ∂_τ^r Nf(0,·) at z = 0, 0 ≤ r ≤ 2n−2.
pub fn d_r(prof: &NProfile, r: usize) -> Result<C, QuatError> {
    let n2 = prof.sig.n_eff();
    if r + 2 > n2 {
        return Err(QuatError::Domain(format!("D_r needs r <= {}, got {r}", n2 - 2)));
    }
    let s = (n2 - r - 2) as f64;
    let (re, im) = jet_profile(prof, r);
    let at = |g: PolyGauss| -> Result<f64, QuatError> {
        if g.is_zero() {
            return Ok(0.0);
        }
        Ok(fractional_laplacian_at(&R3Function::from(g), s, &[0.0; 3])?)
    };
    Ok(C::new(at(re)?, at(im)?))
}

/// One coefficient × D_r entry of the Φ₁₂ sums.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Phi12Term {
    /// "odd_l", "k<0" or "k>=0".
    pub block: &'static str,
    pub k: i64,
    pub l: i64,
    pub j: i64,
    pub r: usize,
    pub coeff: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct QuatBoundaryTerms {
    pub odd_l: C,
    pub block_neg: C,
    pub block_pos: C,
    pub terms: Vec<Phi12Term>,
    /// k of the negative and nonnegative blocks, as displayed.
    pub ks_neg: Vec<i64>,
    pub ks_pos: Vec<i64>,
    /// k with 2k + 2(p−q) = 0, left out.
    pub dropped: Vec<i64>,
    /// Binomials where the triangle and falling-factorial conventions differ.
    pub convention_flags: Vec<String>,
}

impl QuatBoundaryTerms {
    pub fn total(&self) -> C {
        self.odd_l + self.block_neg + self.block_pos
    }
}

struct Binoms(Vec<String>);

impl Binoms {
    fn c(&mut self, a: i64, b: i64) -> f64 {
        let g = binom(a, b);
        let t = binom_triangle(a, b);
        if g != t {
            self.0.push(format!("C({a},{b}): falling factorial {g}, triangle {t}"));
        }
        g
    }
}

pub fn phi12_quat_terms(f: &TestFunction, config: &QuatKernelConfig) -> Result<QuatBoundaryTerms, QuatError> {
    check(f, config)?;
    let n = config.n as i64;
    let (p, q) = (f.sig.p as i64, f.sig.q as i64);
    let prof = NProfile::new(f);
    let rmax = (2 * n - 2) as usize;
    let mut dr = Vec::with_capacity(rmax + 1);
    for r in 0..=rmax {
        dr.push(d_r(&prof, r)?);
    }
    let mut bin = Binoms(Vec::new());
    let mut terms = Vec::new();

    let mut odd_l = C::new(0.0, 0.0);
    for l in (1..=2 * n - 2).step_by(2) {
        for j in 1..=l + 1 {
            let cj = cj_pm(2 * n as usize, C::new(0.0, 0.0), j as usize, Sign::Minus)?;
            let coeff = -2f64.powi(-(2 * n - 2 * l - j - 3) as i32) * bin.c(2 * n - j - 1, l - j - 1);
            if coeff == 0.0 {
                continue;
            }
            terms.push(Phi12Term { block: "odd_l", k: 0, l, j, r: l as usize, coeff });
            odd_l += cj * dr[l as usize] * coeff;
        }
    }

    let mut dropped = Vec::new();
    let block = |k: i64, parts: &mut Vec<(i64, usize, f64)>, name: &'static str, terms: &mut Vec<Phi12Term>| -> C {
        let den = (2 * k + 2 * (p - q)) as f64;
        let mut acc = C::new(0.0, 0.0);
        for &(l, r, c) in parts.iter() {
            if r > rmax || c == 0.0 {
                continue;
            }
            terms.push(Phi12Term { block: name, k, l, j: 0, r, coeff: c / den });
            acc += dr[r] * c;
        }
        parts.clear();
        acc / den
    };

    let ks_neg: Vec<i64> = (-2 * q + 1..0).collect();
    let mut block_neg = C::new(0.0, 0.0);
    for &k in &ks_neg {
        if k + p - q == 0 {
            dropped.push(k);
            continue;
        }
        let mut parts = Vec::new();
        let top = k + 2 * p - 1;
        for r in 0..=top.max(-1) {
            let c = sgn(k + 1) * bin.c(top, r) * 2f64.powi((-k - 2 * p + 2 * r + 2) as i32) * -1.0;
            parts.push((-1, r as usize, c));
        }
        for l in 0..=(2 * n - 2 - k - 2 * p) {
            let outer = sgn(-l - k) * bin.c(-k - 2 * p + 2 * n - 1, 2 * n - 2 - l - k - 2 * p);
            let top = l + k - 2 * p;
            for r in 0..=top.max(-1) {
                let c = outer * bin.c(top, r) * -1.0 * 2f64.powi((-l - k + 2 * p + 2 * r + 1) as i32);
                parts.push((l, r as usize, c));
            }
        }
        block_neg += block(k, &mut parts, "k<0", &mut terms);
    }

    let ks_pos: Vec<i64> = (0..2 * q).collect();
    let mut block_pos = C::new(0.0, 0.0);
    for &k in &ks_pos {
        if k + p - q == 0 {
            dropped.push(k);
            continue;
        }
        let mut parts = Vec::new();
        let top = -k + 2 * q - 1;
        for r in 0..=top.max(-1) {
            let c = sgn(k + 1) * bin.c(top, r) * 2f64.powi((k - 2 * q + 2 * r + 1) as i32) * sgn(r);
            parts.push((-1, r as usize, c));
        }
        for l in 0..=(2 * n - 2 + k - 2 * q) {
            let outer = sgn(-l + k - 2 * q) * bin.c(k - 2 * q + 2 * n - 1, 2 * n - 2 - l + k - 2 * q);
            let top = l - k + 2 * q;
            for r in 0..=top.max(-1) {
                let c = outer * bin.c(top, r) * 2f64.powi((-l + k - 2 * q + 2 * r + 1) as i32) * sgn(r);
                parts.push((l, r as usize, c));
            }
        }
        block_pos += block(k, &mut parts, "k>=0", &mut terms);
    }

    Ok(QuatBoundaryTerms {
        odd_l,
        block_neg,
        block_pos,
        terms,
        ks_neg,
        ks_pos,
        dropped,
        convention_flags: bin.0,
    })
}

/// Φ₁₁ + Φ₁₂ + both k-blocks as displayed, without normalization.
pub fn phi_quat_literal(f: &TestFunction, config: &QuatKernelConfig, grid: &Phi11Grid) -> Result<PairingResult, QuatError> {
    let mut r = phi11_quat_pair(f, config, grid)?;
    let bt = phi12_quat_terms(f, config)?;
    r.value += bt.total();
    r.notes.push(format!(
        "phi12 odd-l sum = {}, k<0 block = {}, k>=0 block = {}",
        bt.odd_l, bt.block_neg, bt.block_pos
    ));
    if !bt.dropped.is_empty() {
        r.notes.push(format!("k with 2k+2(p-q) = 0 dropped: {:?}", bt.dropped));
    }
    Ok(r)
}
