//! The τ-jets h_l(t) = ∂_τ^l Nf(0, t) and their δ / vp pairings.
//!
//! On the test family h_l(t) is a polynomial times e^{−bt²}, so every
//! t-derivative stays in that form and both pairings are closed form:
//! ⟨δ, h⁽ᵐ⁾⟩ is the constant coefficient and
//! ⟨vp(1/t), h⁽ᵐ⁾⟩ = Σ_{i odd} c_i Γ(i/2) b^{−i/2}.

use num_complex::Complex64 as C;
use special_fn::combin::factorial;
use special_fn::gamma::gamma_real;
use tengstrand::NProfile;

/// Coefficients (lowest first) of h_l(t) e^{bt²}.
pub fn h_poly(prof: &NProfile, l: usize) -> Vec<C> {
    let mut out: Vec<C> = Vec::new();
    let fl = factorial(l as u32);
    for s in &prof.sectors {
        let c = s.center[0] as usize;
        if out.len() <= c {
            out.resize(c + 1, C::new(0.0, 0.0));
        }
        out[c] += prof.taylor_coeff(s, true, l) * fl;
    }
    out
}

/// h(t) ↦ (−1)^l h(−t), the jet of the reflected profile.
pub fn reflect_jet(poly: &[C], l: usize) -> Vec<C> {
    let sl = if l % 2 == 0 { 1.0 } else { -1.0 };
    poly.iter()
        .enumerate()
        .map(|(i, c)| if i % 2 == 0 { c * sl } else { -c * sl })
        .collect()
}

/// m-th derivative of poly(t)e^{−bt²}, as the new polynomial factor.
pub fn gauss_derivative(poly: &[C], b: f64, m: usize) -> Vec<C> {
    let mut c = poly.to_vec();
    for _ in 0..m {
        let mut next = vec![C::new(0.0, 0.0); c.len() + 1];
        for (i, x) in c.iter().enumerate() {
            if i > 0 {
                next[i - 1] += x * i as f64;
            }
            next[i + 1] -= x * (2.0 * b);
        }
        c = next;
    }
    c
}

/// ⟨δ, ·⟩ and ⟨vp(1/t), ·⟩ of poly(t)e^{−bt²}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JetPairing {
    pub delta: C,
    pub vp: C,
}

pub fn jet_pairing(poly: &[C], b: f64) -> JetPairing {
    let delta = poly.first().copied().unwrap_or(C::new(0.0, 0.0));
    let mut vp = C::new(0.0, 0.0);
    for (i, c) in poly.iter().enumerate().skip(1).step_by(2) {
        let g = gamma_real(i as f64 / 2.0).expect("positive half-integer");
        vp += c * (g * b.powf(-(i as f64) / 2.0));
    }
    JetPairing { delta, vp }
}

/// Pairings of h_l^{(n−l−2)} for the profile (or its reflection).
pub fn jet_terms(prof: &NProfile, l: usize, reflected: bool) -> JetPairing {
    let n = prof.sig.n();
    let mut h = h_poly(prof, l);
    if reflected {
        h = reflect_jet(&h, l);
    }
    jet_pairing(&gauss_derivative(&h, prof.b, n - l - 2), prof.b)
}
