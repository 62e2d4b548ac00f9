//! C_α, C̃_α, the truncated Ψ_{r,α} series and the incomplete-Beta
//! constants c_j^±.

use crate::error::FsolError;
use num_complex::Complex64 as C;
use special_fn::combin::binom;
use special_fn::quad::tanh_sinh;
use special_fn::richardson::limit_to_zero;
use special_fn::sum::NeumaierC;
use special_fn::{beta, incomplete_beta_half};
use std::cell::RefCell;
use std::f64::consts::PI;

/// Which of ∓α a constant is built from: `Minus` uses n − α, `Plus` n + α.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Minus,
    Plus,
}

impl Sign {
    fn shift(self, alpha: C) -> C {
        match self {
            Sign::Minus => -alpha,
            Sign::Plus => alpha,
        }
    }
}

fn check_n(n: usize) -> Result<(), FsolError> {
    if n < 2 {
        return Err(FsolError::Domain(format!("n = {n}, need n >= 2")));
    }
    Ok(())
}

fn pole_guard(x: C, what: &str) -> Result<(), FsolError> {
    let r = x.re.round();
    if x.im == 0.0 && r <= 0.0 && (x.re - r).abs() < 1e-12 {
        return Err(FsolError::Pole(format!("{what} = {x} is a pole of Gamma")));
    }
    Ok(())
}

/// C_α = Γ((n+α)/2)Γ((n−α)/2)/(n−1)! = B((n+α)/2, (n−α)/2).
pub fn c_alpha(n: usize, alpha: C) -> Result<C, FsolError> {
    check_n(n)?;
    let nf = n as f64;
    let (ap, am) = ((alpha + nf) / 2.0, (-alpha + nf) / 2.0);
    pole_guard(ap, "(n+alpha)/2")?;
    pole_guard(am, "(n-alpha)/2")?;
    Ok(beta(ap, am)?)
}

/// C̃_α = (−1)ⁿ e^{−iαπ} C_α.
pub fn c_alpha_tilde(n: usize, alpha: C) -> Result<C, FsolError> {
    let sg = if n % 2 == 0 { 1.0 } else { -1.0 };
    Ok(c_alpha(n, alpha)? * (C::new(0.0, -PI) * alpha).exp() * sg)
}

fn check_strip(n: usize, alpha: C) -> Result<(), FsolError> {
    check_n(n)?;
    let nf = n as f64;
    if nf + alpha.re <= 0.0 || nf - alpha.re <= 0.0 {
        return Err(FsolError::Domain(format!("alpha = {alpha} outside the strip Re(n +- alpha) > 0")));
    }
    Ok(())
}

/// lim_{r→1⁻} Ψ_{r,α}(0) as ∫₀¹ (r^{−α−1} + r^{α−1})(r/(1+r²))ⁿ dr.
pub fn abel_constant(n: usize, alpha: C) -> Result<C, FsolError> {
    check_strip(n, alpha)?;
    let nf = n as f64;
    let res = tanh_sinh(
        |r: f64, dr: f64, _| {
            let lr = dr.ln();
            let pw = ((-alpha + (nf - 1.0)) * lr).exp() + ((alpha + (nf - 1.0)) * lr).exp();
            pw / (1.0 + r * r).powi(n as i32)
        },
        0.0,
        1.0,
        1e-14,
    )?;
    Ok(res.value)
}

/// |Abel integral − C_α|.
pub fn abel_constant_check(n: usize, alpha: C) -> Result<f64, FsolError> {
    Ok((abel_constant(n, alpha)? - c_alpha(n, alpha)?).norm())
}

/// Truncated Ψ_{r,α}(θ) with a bound on the omitted terms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PsiSeries {
    pub value: C,
    pub tail_bound: f64,
    pub terms: usize,
}

/// Ψ_{r,α}(θ) = Σ_{k<K} α_k ( r^{e₋} e^{i e₋ θ}/e₋ + r^{e₊} e^{−i e₊ θ}/e₊ ),
/// e∓ = 2k + n ∓ α, α_k = (−1)^k C(k+n−1, k).
pub fn psi_r_alpha(theta: f64, r: f64, n: usize, alpha: C, k_terms: usize) -> Result<PsiSeries, FsolError> {
    check_n(n)?;
    if !(0.0..1.0).contains(&r) {
        return Err(FsolError::Domain(format!("r = {r} must lie in [0, 1)")));
    }
    if r == 0.0 {
        return Ok(PsiSeries { value: C::new(0.0, 0.0), tail_bound: 0.0, terms: k_terms });
    }
    let lr = r.ln();
    let nf = n as f64;
    let term = |k: usize| -> Result<C, FsolError> {
        let ak = binom((k + n - 1) as i64, n as i64 - 1) * if k % 2 == 0 { 1.0 } else { -1.0 };
        let em = -alpha + (2 * k) as f64 + nf;
        let ep = alpha + (2 * k) as f64 + nf;
        if em.norm() < 1e-14 || ep.norm() < 1e-14 {
            return Err(FsolError::Pole(format!("2k+n+-alpha vanishes at k = {k}")));
        }
        let a = (em * lr + C::new(0.0, theta) * em).exp() / em;
        let b = (ep * lr - C::new(0.0, theta) * ep).exp() / ep;
        Ok((a + b) * ak)
    };
    let mut acc = NeumaierC::default();
    for k in 0..k_terms {
        acc.add(term(k)?);
    }
    // Successive |α_k| r^{2k} shrink by (k+n)/(k+1) r², so the tail is
    // dominated by a geometric series once that ratio drops below 1.
    let next = term(k_terms)?.norm();
    let ratio = (k_terms + n) as f64 / (k_terms + 1) as f64 * r * r;
    let slack = (alpha.im * theta).abs().exp();
    let tail_bound = if ratio < 1.0 { next * slack / (1.0 - ratio) } else { f64::INFINITY };
    Ok(PsiSeries { value: acc.total(), tail_bound, terms: k_terms })
}

fn cj_args(n: usize, alpha: C, j: usize, sign: Sign) -> Result<C, FsolError> {
    check_n(n)?;
    if j == 0 {
        return Err(FsolError::Domain("c_j needs j >= 1".into()));
    }
    let a = (sign.shift(alpha) + n as f64) / 2.0;
    if a.re <= 0.0 {
        return Err(FsolError::Domain(format!("Re((n -+ alpha)/2) = {} must be positive", a.re)));
    }
    Ok(a)
}

/// c_j^∓ = ½ B_{1/2}((n∓α)/2, j − (n∓α)/2).
pub fn cj_pm(n: usize, alpha: C, j: usize, sign: Sign) -> Result<C, FsolError> {
    let a = cj_args(n, alpha, j, sign)?;
    Ok(incomplete_beta_half(a, -a + j as f64)? * 0.5)
}

/// w_j^∓(r) = Σ_k (−1)^k C(j+k−1, k) r^{2k+e}/(2k+e), e = n ∓ α.
pub fn w_series(n: usize, alpha: C, j: usize, sign: Sign, r: f64) -> Result<C, FsolError> {
    let a = cj_args(n, alpha, j, sign)?;
    let e = a * 2.0;
    let r2 = r * r;
    let lead = (e * r.ln()).exp();
    let mut acc = NeumaierC::default();
    let mut coef = 1.0; // C(j+k−1, k) r^{2k}
    let mut k = 0usize;
    loop {
        let sg = if k % 2 == 0 { 1.0 } else { -1.0 };
        let t = lead * (sg * coef) / (e + (2 * k) as f64);
        acc.add(t);
        if k > j + 10 && t.norm() < 1e-19 {
            break;
        }
        if k > 2_000_000 {
            return Err(FsolError::Special(special_fn::SpecialError::Convergence(format!(
                "w_j series at r = {r} did not settle"
            ))));
        }
        coef *= (j + k) as f64 / (k + 1) as f64 * r2;
        k += 1;
    }
    Ok(acc.total())
}

/// Abel limit lim_{r→1⁻} w_j^∓(r) by Richardson extrapolation in 1 − r.
/// Returns the value and the last extrapolation difference.
pub fn cj_abel(n: usize, alpha: C, j: usize, sign: Sign) -> Result<(C, f64), FsolError> {
    cj_args(n, alpha, j, sign)?;
    let failure = RefCell::new(None);
    let (v, err) = limit_to_zero(
        |eps| match w_series(n, alpha, j, sign, 1.0 - eps) {
            Ok(x) => x,
            Err(e) => {
                failure.borrow_mut().get_or_insert(e);
                C::new(f64::NAN, f64::NAN)
            }
        },
        0.05,
        6,
    );
    match failure.into_inner() {
        Some(e) => Err(e),
        None => Ok((v, err)),
    }
}
