//! The coefficient families a_{kl}, b_{kl}, c_{kl} and the quoted closed
//! form for a_{kl} + b_{kl}.
//!
//! a_{kl} = (−1)ⁿ (1/l!) ∫₀^∞ L_k^{n−1}(s) e^{−s/2} s^l ds is an integer:
//! expanding L_k^{n−1} and using ∫ s^{i+l} e^{−s/2} = (i+l)! 2^{i+l+1},
//! a_{kl} = (−1)ⁿ Σ_i (−1)^i C(k+n−1, k−i) C(i+l, l) 2^{i+l+1}.

use crate::constants::{cj_pm, Sign};
use crate::error::FsolError;
use num_complex::Complex64 as C;
use special_fn::combin::{binom, binom_triangle, factorial};
use special_fn::laguerre;
use special_fn::quad::adaptive_semi_infinite;

fn sgn(e: i64) -> f64 {
    if e.rem_euclid(2) == 0 {
        1.0
    } else {
        -1.0
    }
}

fn binom_i(a: i64, k: i64) -> i128 {
    if k < 0 || a < 0 || k > a {
        return 0;
    }
    let mut acc: i128 = 1;
    for i in 0..k {
        acc = acc * (a - i) as i128 / (i + 1) as i128;
    }
    acc
}

/// a_{kl} from the exact integer sum.
pub fn a_kl(n: usize, k: usize, l: usize) -> f64 {
    let (n, k, l) = (n as i64, k as i64, l as i64);
    let mut acc: i128 = 0;
    for i in 0..=k {
        let s: i128 = if i % 2 == 0 { 1 } else { -1 };
        acc += s * binom_i(k + n - 1, k - i) * binom_i(i + l, l) * (1i128 << (i + l + 1));
    }
    acc as f64 * sgn(n)
}

/// a_{kl} by adaptive quadrature of the defining integral, with L_k^{n−1}
/// from the three-term recurrence.
pub fn a_kl_quad(n: usize, k: usize, l: usize) -> Result<f64, FsolError> {
    let res = adaptive_semi_infinite(
        |s| C::new(laguerre(k, n - 1, s) * (-0.5 * s).exp() * s.powi(l as i32), 0.0),
        0.0,
        1e-13,
        1e-13,
    )?;
    Ok(res.value.re * sgn(n as i64) / factorial(l as u32))
}

/// b_{kl} = Σ_{j=l}^{n−2} C(j,l) (½)^{2−l} (−1)^{n−j} C(k+n−1, n−j−2).
pub fn b_kl(n: usize, k: usize, l: usize) -> f64 {
    let (n, k, l) = (n as i64, k as i64, l as i64);
    (l..=n - 2)
        .map(|j| binom(j, l) * 0.5f64.powi((2 - l) as i32) * sgn(n - j) * binom(k + n - 1, n - j - 2))
        .sum()
}

/// (−1)^k Σ_{j=1}^{l+1} 2^{−(n−l−j−1)} C(n−j−1, l−j+1) C(j+k−1, k).
pub fn ab_closed_form(n: usize, k: usize, l: usize) -> f64 {
    let (n, k, l) = (n as i64, k as i64, l as i64);
    let s: f64 = (1..=l + 1)
        .map(|j| 2f64.powi(-(n - l - j - 1) as i32) * binom(n - j - 1, l - j + 1) * binom(j + k - 1, k))
        .sum();
    s * sgn(k)
}

/// Binomial convention for upper indices that can go negative.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinomConvention {
    /// C(a, b) = 0 outside 0 ≤ b ≤ a.
    Triangle,
    /// Falling-factorial C(a, b) for a < 0.
    Generalized,
}

/// c_{kl} = Σ_{1 ≤ j ≤ n−2, j ≥ n−k−2} 2^{2l−n−j} (−1)^{n−j} C(j,l) C(k−l+1, n−j−2).
pub fn c_kl(n: usize, k: usize, l: usize, conv: BinomConvention) -> f64 {
    let (n, k, l) = (n as i64, k as i64, l as i64);
    let bin = |a: i64, b: i64| match conv {
        BinomConvention::Triangle => binom_triangle(a, b),
        BinomConvention::Generalized => binom(a, b),
    };
    ((n - k - 2).max(1)..=n - 2)
        .map(|j| 2f64.powi((2 * l - n - j) as i32) * sgn(n - j) * bin(j, l) * bin(k - l + 1, n - j - 2))
        .sum()
}

/// One (k, l) row of the a + b comparison.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AbDiscrepancy {
    pub k: usize,
    pub l: usize,
    pub definitional: f64,
    pub closed_form: f64,
}

impl AbDiscrepancy {
    pub fn diff(&self) -> f64 {
        self.definitional - self.closed_form
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientTable {
    pub n: usize,
    pub k_max: usize,
    /// a[k][l], b[k][l] for k ≤ k_max, l ≤ n−2.
    pub a: Vec<Vec<f64>>,
    pub a_quad: Vec<Vec<f64>>,
    pub b: Vec<Vec<f64>>,
    /// c[k][l] for k, l ≤ n−2, triangle convention.
    pub c: Vec<Vec<f64>>,
    /// Entries where the generalized convention gives a different c_{kl}.
    pub c_convention_flags: Vec<(usize, usize, f64)>,
    /// c_j^± at α = 0 for j = 1..=n−1 (the two signs coincide there).
    pub cj0: Vec<f64>,
    pub ab_report: Vec<AbDiscrepancy>,
}

impl CoefficientTable {
    pub fn max_ab_discrepancy(&self) -> f64 {
        self.ab_report.iter().map(|d| d.diff().abs()).fold(0.0, f64::max)
    }

    /// Largest |exact a_{kl} − quadrature a_{kl}| relative to max(1, |a_{kl}|).
    pub fn a_quad_deviation(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for (ra, rq) in self.a.iter().zip(&self.a_quad) {
            for (x, y) in ra.iter().zip(rq) {
                worst = worst.max((x - y).abs() / x.abs().max(1.0));
            }
        }
        worst
    }
}

pub fn coeff_tables(n: usize, k_max: usize) -> Result<CoefficientTable, FsolError> {
    if n < 2 {
        return Err(FsolError::Domain(format!("n = {n}, need n >= 2")));
    }
    let ls = 0..=n - 2;
    let mut a = Vec::new();
    let mut a_quad = Vec::new();
    let mut b = Vec::new();
    let mut ab_report = Vec::new();
    for k in 0..=k_max {
        let ra: Vec<f64> = ls.clone().map(|l| a_kl(n, k, l)).collect();
        let rq: Vec<f64> = ls.clone().map(|l| a_kl_quad(n, k, l)).collect::<Result<_, _>>()?;
        let rb: Vec<f64> = ls.clone().map(|l| b_kl(n, k, l)).collect();
        for l in ls.clone() {
            ab_report.push(AbDiscrepancy {
                k,
                l,
                definitional: ra[l] + rb[l],
                closed_form: ab_closed_form(n, k, l),
            });
        }
        a.push(ra);
        a_quad.push(rq);
        b.push(rb);
    }
    let mut c = Vec::new();
    let mut c_convention_flags = Vec::new();
    for k in 0..=n - 2 {
        let row: Vec<f64> = ls.clone().map(|l| c_kl(n, k, l, BinomConvention::Triangle)).collect();
        for l in ls.clone() {
            let g = c_kl(n, k, l, BinomConvention::Generalized);
            if g != row[l] {
                c_convention_flags.push((k, l, g));
            }
        }
        c.push(row);
    }
    let cj0 = (1..n)
        .map(|j| cj_pm(n, C::new(0.0, 0.0), j, Sign::Minus).map(|v| v.re))
        .collect::<Result<_, _>>()?;
    Ok(CoefficientTable { n, k_max, a, a_quad, b, c, c_convention_flags, cj0, ab_report })
}
