//! ⟨F_{λ,k}, g⟩ for g on 𝔽ⁿ, through Ng.
//!
//! With all n−1 distributional derivatives moved onto the test side,
//! ⟨F_{λ,k}, g⟩ = ε (−1)^{n−1} ∫₀^∞ L_j(σ) ψ^{(n−1)}(σ) dσ,
//! ψ(σ) = (2/|λ|) e^{−σ/2} Ng(±2σ/|λ|), where
//! k ≥ 0: j = k+p−1, sign +, ε = (−1)^{p−1};
//! k < 0: j = −k+q−1, sign −, ε = (−1)^{q−1}.

use crate::error::SpectralError;
use crate::pairing::PairingResult;
use num_complex::Complex64 as C;
use special_fn::combin::{binom, factorial};
use special_fn::laguerre;
use special_fn::quad::adaptive_semi_infinite;
use special_fn::richardson::derivative;
use tengstrand::{NProfile, Signature, TestFunction};

/// The (n, p, q) that F is built from: the signature itself over ℂ, the
/// doubled one over ℍ.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FParams {
    pub n: usize,
    pub p: usize,
    pub q: usize,
}

impl FParams {
    pub fn from_signature(sig: &Signature) -> Self {
        let (p, q) = sig.half_blocks();
        FParams { n: p + q, p, q }
    }

    pub fn laguerre_degree(&self, k: i64) -> i64 {
        if k >= 0 {
            k + self.p as i64 - 1
        } else {
            -k + self.q as i64 - 1
        }
    }

    pub fn eps(&self, k: i64) -> f64 {
        let e = if k >= 0 { self.p } else { self.q };
        if (e - 1) % 2 == 0 {
            1.0
        } else {
            -1.0
        }
    }

    /// Eigenvalue index μ = 2k + p − q, so that L S_{λ,k} = −|λ| μ S_{λ,k}.
    pub fn mu(&self, k: i64) -> f64 {
        (2 * k + self.p as i64 - self.q as i64) as f64
    }
}

/// ∫₀^∞ L_j(σ) σ^m e^{−cσ} dσ for j = 0..=jmax, from the generating function:
/// m! c^{−m−1} Σ_i C(m,i)(−1)^i C(m+d,d)(−r)^d, d = j−i, r = (1−c)/c.
pub fn laguerre_exp_table(jmax: usize, m: usize, c: f64) -> Vec<f64> {
    let r = (1.0 - c) / c;
    let mut w = vec![0.0; jmax + 1];
    w[0] = 1.0;
    for d in 0..jmax {
        w[d + 1] = w[d] * (m + d + 1) as f64 / (d + 1) as f64 * (-r);
    }
    let pre = factorial(m as u32) / c.powi(m as i32 + 1);
    (0..=jmax)
        .map(|j| {
            let mut acc = 0.0;
            for i in 0..=m.min(j) {
                let s = if i % 2 == 0 { 1.0 } else { -1.0 };
                acc += s * binom(m as i64, i as i64) * w[j - i];
            }
            pre * acc
        })
        .collect()
}

pub fn laguerre_exp_integral(j: usize, m: usize, c: f64) -> f64 {
    laguerre_exp_table(j, m, c)[j]
}

/// Coefficients of (D − c)^{n−1} applied to Σ Qt_m σ^m.
fn shifted_derivative(qt: &[C], c: f64, times: usize) -> Vec<C> {
    let mut r = qt.to_vec();
    for _ in 0..times {
        let mut next: Vec<C> = r.iter().map(|x| -x * c).collect();
        for (m, x) in r.iter().enumerate().skip(1) {
            next[m - 1] += x * m as f64;
        }
        r = next;
    }
    r
}

/// ⟨F_{λ,k}, g⟩ for all k in `ks`, where Ng(τ) = pos(τ)e^{−aτ} for τ ≥ 0
/// and neg(τ)e^{aτ} for τ < 0.
pub fn f_pair_range(params: &FParams, lam_abs: f64, ks: &[i64], pos: &[C], neg: &[C], a: f64) -> Vec<C> {
    let c = 0.5 + 2.0 * a / lam_abs;
    let n1 = params.n - 1;
    let sgn_n1 = if n1 % 2 == 0 { 1.0 } else { -1.0 };
    let side = |positive: bool| -> (Vec<C>, usize) {
        let poly = if positive { pos } else { neg };
        let s = if positive { 2.0 / lam_abs } else { -2.0 / lam_abs };
        let qt: Vec<C> = poly.iter().enumerate().map(|(m, q)| q * s.powi(m as i32)).collect();
        let r = shifted_derivative(&qt, c, n1);
        let jmax = ks
            .iter()
            .filter(|&&k| (k >= 0) == positive)
            .map(|&k| params.laguerre_degree(k) as usize)
            .max()
            .unwrap_or(0);
        (r, jmax)
    };
    let (rp, jp) = side(true);
    let (rn, jn) = side(false);
    let table = |r: &[C], jmax: usize| -> Vec<C> {
        let mut acc = vec![C::new(0.0, 0.0); jmax + 1];
        for (m, rm) in r.iter().enumerate() {
            if *rm == C::new(0.0, 0.0) {
                continue;
            }
            for (o, v) in acc.iter_mut().zip(laguerre_exp_table(jmax, m, c)) {
                *o += rm * v;
            }
        }
        acc
    };
    let tp = table(&rp, jp);
    let tn = table(&rn, jn);
    ks.iter()
        .map(|&k| {
            let j = params.laguerre_degree(k) as usize;
            let v = if k >= 0 { tp[j] } else { tn[j] };
            v * (params.eps(k) * sgn_n1 * 2.0 / lam_abs)
        })
        .collect()
}

fn check_k(params: &FParams, k: i64) -> Result<(), SpectralError> {
    let j = params.laguerre_degree(k);
    if j < 0 {
        return Err(SpectralError::Index(j));
    }
    Ok(())
}

/// Side polynomials of Ng at the center point t, summed over sectors.
pub(crate) fn slice_profile(prof: &NProfile, t: &[f64]) -> (Vec<C>, Vec<C>) {
    let mut pos: Vec<C> = Vec::new();
    let mut neg: Vec<C> = Vec::new();
    for s in &prof.sectors {
        let w = prof.center_factor(s, t);
        for (dst, src) in [(&mut pos, &s.pos), (&mut neg, &s.neg)] {
            if dst.len() < src.len() {
                dst.resize(src.len(), C::new(0.0, 0.0));
            }
            for (d, x) in dst.iter_mut().zip(src) {
                *d += x * w;
            }
        }
    }
    (pos, neg)
}

/// ⟨F_{λ,k}, f(·, t)⟩, closed form.
pub fn f_lambda_k_pair(lambda: f64, k: i64, f: &TestFunction, t: &[f64]) -> Result<PairingResult, SpectralError> {
    if lambda == 0.0 {
        return Err(SpectralError::Domain("lambda must be nonzero".into()));
    }
    let params = FParams::from_signature(&f.sig);
    check_k(&params, k)?;
    let prof = NProfile::new(f);
    let (pos, neg) = slice_profile(&prof, t);
    let v = f_pair_range(&params, lambda.abs(), &[k], &pos, &neg, f.a)[0];
    Ok(PairingResult::exact(v))
}

/// How the quadrature route differentiates Ng.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NgDerivative {
    /// Differentiate the polynomial × exponential profile symbolically.
    Exact,
    /// Richardson-extrapolated central differences of the profile's
    /// one-sided analytic continuation.
    Richardson,
}

/// ⟨F_{λ,k}, f(·, t)⟩ by adaptive quadrature of L_j(σ) ψ^{(n−1)}(σ), with
/// L_j from the recurrence and ψ^{(n−1)} by Leibniz over e^{−σ/2}.
pub fn f_lambda_k_pair_quad(
    lambda: f64,
    k: i64,
    f: &TestFunction,
    t: &[f64],
    mode: NgDerivative,
) -> Result<PairingResult, SpectralError> {
    if lambda == 0.0 {
        return Err(SpectralError::Domain("lambda must be nonzero".into()));
    }
    let params = FParams::from_signature(&f.sig);
    check_k(&params, k)?;
    let lam = lambda.abs();
    let j = params.laguerre_degree(k) as usize;
    let positive = k >= 0;
    let prof = NProfile::new(f);
    let (pos, neg) = slice_profile(&prof, t);
    let (poly, rate) = if positive { (pos, -f.a) } else { (neg, f.a) };
    let s = if positive { 2.0 / lam } else { -2.0 / lam };
    let n1 = params.n - 1;

    // i-th derivatives of poly(τ)e^{rate τ} as coefficient lists
    let mut derivs: Vec<Vec<C>> = vec![poly.clone()];
    for _ in 0..n1 {
        let last = derivs.last().expect("nonempty");
        let mut next: Vec<C> = last.iter().map(|x| x * rate).collect();
        for (m, x) in last.iter().enumerate().skip(1) {
            next[m - 1] += x * m as f64;
        }
        derivs.push(next);
    }
    let ng = |tau: f64| poly.iter().rev().fold(C::new(0.0, 0.0), |acc, c| acc * tau + c) * (rate * tau).exp();
    let ng_d = |i: usize, tau: f64| -> C {
        match mode {
            NgDerivative::Exact => {
                derivs[i].iter().rev().fold(C::new(0.0, 0.0), |acc, c| acc * tau + c) * (rate * tau).exp()
            }
            NgDerivative::Richardson => derivative(ng, tau, i as u32, 0.2, 7).0,
        }
    };
    let psi_d = |sigma: f64| -> C {
        let mut acc = C::new(0.0, 0.0);
        for i in 0..=n1 {
            let w = binom(n1 as i64, i as i64) * (-0.5f64).powi((n1 - i) as i32) * s.powi(i as i32);
            acc += ng_d(i, s * sigma) * w;
        }
        acc * (2.0 / lam * (-0.5 * sigma).exp())
    };
    let res = adaptive_semi_infinite(
        |sigma| psi_d(sigma) * laguerre(j, 0, sigma),
        0.0,
        1e-14,
        1e-11,
    )?;
    let sgn_n1 = if n1 % 2 == 0 { 1.0 } else { -1.0 };
    let scale = params.eps(k) * sgn_n1;
    Ok(PairingResult {
        value: res.value * scale,
        error_estimate: res.error,
        notes: vec![format!("adaptive G7K15, {} evaluations", res.evals)],
        ..PairingResult::default()
    })
}
