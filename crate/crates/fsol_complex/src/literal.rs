//! The pairing exactly as displayed in closed form in the literature,
//! kept alongside the corrected route in [`crate::phi`] so the two can be
//! compared term by term.
//!
//! Φ₁₁: 4^{n−1}(n−1)! [C_α ∬_{τ>0} + C̃_α ∬_{τ<0}] of
//!      (τ−4it)^{−(n−α)/2} (τ+4it)^{−(n+α)/2} sgn τ G(τ,t),
//! Φ₁₂: odd l ≤ n−2, j = 1..l+1, weights 2^{2l−n+j+3} C(n−j−1, l−j+1),
//! Φ₂:  k, l ≤ n−2 with c_{kl}, against ⟨π/2 δ ± i vp, h_l^{(n−l−2)}⟩.
//! No normalizing constant is applied.

use crate::alpha::AlphaParam;
use crate::coeffs::{c_kl, BinomConvention};
use crate::constants::{c_alpha, c_alpha_tilde, cj_pm, Sign};
use crate::error::FsolError;
use crate::jets::jet_terms;
use crate::polar::{PhiGrid, PolarRule};
use num_complex::Complex64 as C;
use spectral::PairingResult;
use special_fn::combin::{binom, factorial};
use std::f64::consts::FRAC_PI_2;
use tengstrand::{Field, NProfile, TestFunction};

const I: C = C::new(0.0, 1.0);

fn check(g: &TestFunction, alpha: &AlphaParam) -> Result<(), FsolError> {
    if g.sig.field != Field::Complex || g.sig != alpha.sig {
        return Err(FsolError::Domain("literal pairing needs a complex test function matching alpha".into()));
    }
    if alpha.is_resonant() {
        return Err(FsolError::Resonance {
            k: alpha.resonances()[0].k,
            sign: alpha.resonances()[0].sign,
            alpha: format!("{}", alpha.alpha),
        });
    }
    Ok(())
}

/// i^e for integer e.
fn ipow(e: i64) -> C {
    match e.rem_euclid(4) {
        0 => C::new(1.0, 0.0),
        1 => I,
        2 => C::new(-1.0, 0.0),
        _ => -I,
    }
}

/// Φ₁₁ by polar quadrature, principal branch for both complex powers.
/// The notes carry the integrability guard sup |G| ρ^{1−n} over ρ < 10⁻².
pub fn phi11_pair(g: &TestFunction, alpha: &AlphaParam, grid: &PhiGrid) -> Result<PairingResult, FsolError> {
    check(g, alpha)?;
    let n = g.sig.n();
    let a = alpha.alpha;
    let nf = n as f64;
    let (em, ep) = ((-a + nf) / 2.0, (a + nf) / 2.0);
    let prof = NProfile::new(g);
    let rule = PolarRule::new(grid, prof.a, prof.b);
    let kernel = |tau: f64, t: f64| {
        let z1 = C::new(tau, -4.0 * t);
        let z2 = C::new(tau, 4.0 * t);
        (-(em * z1.ln()) - ep * z2.ln()).exp()
    };
    let upper = rule.integrate(|nd| kernel(nd.s, nd.t) * prof.g(nd.s, &[nd.t]));
    let lower = rule.integrate(|nd| -kernel(-nd.s, nd.t) * prof.g(-nd.s, &[nd.t]));
    let pre = 4f64.powi(n as i32 - 1) * factorial(n as u32 - 1);
    let value = (c_alpha(n, a)? * upper + c_alpha_tilde(n, a)? * lower) * pre;
    let guard = rule
        .rings
        .iter()
        .filter(|r| r[0].rho < 1e-2 * rule.scale)
        .flat_map(|r| r.iter())
        .map(|nd| {
            let sc = nd.rho.powi(1 - n as i32);
            (prof.g(nd.s, &[nd.t]).norm() * sc).max(prof.g(-nd.s, &[nd.t]).norm() * sc)
        })
        .fold(0.0, f64::max);
    Ok(PairingResult {
        value,
        notes: vec![format!("integrability guard sup |G| rho^(1-n) near 0: {guard:.3e}")],
        ..Default::default()
    })
}

/// The finite sums beyond Φ₁₁.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryTerms {
    pub phi12: C,
    pub phi2: C,
}

pub fn phi12_phi2_terms(g: &TestFunction, alpha: &AlphaParam) -> Result<BoundaryTerms, FsolError> {
    check(g, alpha)?;
    let n = g.sig.n();
    let a = alpha.alpha;
    let prof = NProfile::new(g);
    let ni = n as i64;
    let mut phi12 = C::new(0.0, 0.0);
    for l in (1..=n - 2).step_by(2) {
        let li = l as i64;
        let jp = jet_terms(&prof, l, false);
        for j in 1..=l + 1 {
            let ji = j as i64;
            let cm = cj_pm(n, a, j, Sign::Minus)?;
            let cp = cj_pm(n, a, j, Sign::Plus)?;
            let w = 2f64.powi((2 * li - ni + ji + 3) as i32) * binom(ni - ji - 1, li - ji + 1);
            let d = ipow(-(ni - li - 2)) * cm + ipow(ni - li - 2) * cp;
            let v = ipow(-(ni - li + 1)) * cm + ipow(ni - li + 1) * cp;
            phi12 += (d * jp.delta * FRAC_PI_2 - v * jp.vp) * w;
        }
    }
    let mut phi2 = C::new(0.0, 0.0);
    for l in 0..=n - 2 {
        let jp = jet_terms(&prof, l, false);
        let li = l as i64;
        let plus = jp.delta * FRAC_PI_2 + I * jp.vp;
        let minus = jp.delta * FRAC_PI_2 - I * jp.vp;
        for k in 0..=n - 2 {
            let c = c_kl(n, k, l, BinomConvention::Triangle);
            if c == 0.0 {
                continue;
            }
            let ki = k as i64;
            let den_p = a + (ni - 2 * ki - 2) as f64;
            let den_m = -a + (ni - 2 * ki - 2) as f64;
            if den_p.norm() < 1e-12 || den_m.norm() < 1e-12 {
                return Err(FsolError::Pole(format!("n-2k-2+-alpha vanishes at k = {k}")));
            }
            phi2 += (ipow(ni - li - 2) * plus / den_p + ipow(-(ni - li - 2)) * minus / den_m) * c;
        }
    }
    Ok(BoundaryTerms { phi12, phi2 })
}

/// Φ₁₁ + Φ₁₂ + Φ₂ as displayed, without normalization.
pub fn phi_pair_literal(g: &TestFunction, alpha: &AlphaParam, grid: &PhiGrid) -> Result<PairingResult, FsolError> {
    let mut r = phi11_pair(g, alpha, grid)?;
    let bt = phi12_phi2_terms(g, alpha)?;
    r.value += bt.phi12 + bt.phi2;
    r.notes.push(format!("phi12 = {}, phi2 = {}", bt.phi12, bt.phi2));
    Ok(r)
}
