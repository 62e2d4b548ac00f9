//! ⟨Φ_α, g⟩ for the fundamental solution of L_α = L + iαT.
//!
//! Normalized so that ⟨Φ_α, (L_α f)^∨⟩ = f(e). The pairing splits into
//!   main: the kernel ρ^{−n}e^{±iαθ} against G_g on each half plane,
//!   jets: the Taylor part of Ng integrated in closed form against the
//!         tails of the kernel series, leaving δ/vp pairings of the jets,
//!   mid:  the finitely many k with |2k+p−q| ≤ n−2 that the kernel series
//!         on either half plane does not cover.
//! Block signs follow F_{λ,k}: (−1)^{p−1} for k ≥ 0, (−1)^{q−1} for k < 0.

use crate::alpha::{AlphaParam, Resonance};
use crate::error::FsolError;
use crate::jets::{jet_terms, JetPairing};
use crate::polar::{PhiGrid, PolarRule};
use crate::rpoly::r_poly;
use heis_ops::{apply_operator, involution, OperatorId};
use num_complex::Complex64 as C;
use spectral::{inversion_constant, s_pair_range, FParams, InversionGrid, PairingResult};
use special_fn::beta;
use special_fn::combin::{binom, factorial};
use special_fn::quad::{gl_rule, tanh_sinh};
use tengstrand::{Field, NProfile, TestFunction};

const I: C = C::new(0.0, 1.0);

fn sgn(e: i64) -> f64 {
    if e.rem_euclid(2) == 0 {
        1.0
    } else {
        -1.0
    }
}

/// The three blocks before division by the normalization P = (4π)^{n+1}.
#[derive(Debug, Clone, PartialEq)]
pub struct PhiBreakdown {
    pub main: C,
    pub jets: C,
    pub mid: C,
    /// Resonant (k, ±) sectors left out (relative mode only).
    pub dropped: Vec<Resonance>,
}

impl PhiBreakdown {
    pub fn total(&self) -> C {
        self.main + self.jets + self.mid
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PhiPairing {
    pub result: PairingResult,
    pub breakdown: PhiBreakdown,
}

fn check_inputs(g: &TestFunction, alpha: &AlphaParam) -> Result<(), FsolError> {
    if g.sig.field != Field::Complex {
        return Err(FsolError::Domain("the complex pairing needs a complex test function".into()));
    }
    if g.sig != alpha.sig {
        return Err(FsolError::Domain("alpha and test function carry different signatures".into()));
    }
    let n = g.sig.n() as f64;
    if alpha.alpha.re.abs() >= n {
        return Err(FsolError::Domain(format!(
            "alpha = {} outside the strip |Re alpha| < n where the jet weights converge",
            alpha.alpha
        )));
    }
    Ok(())
}

/// The pair (X₋, X₊) = ((−i)^m(π h₀ − iV), i^m(π h₀ + iV)), m = n−l−2.
fn x_pair(jp: JetPairing, m: usize) -> (C, C) {
    let im = I.powu(m as u32);
    let imm = (-I).powu(m as u32);
    (imm * (jp.delta * std::f64::consts::PI - I * jp.vp), im * (jp.delta * std::f64::consts::PI + I * jp.vp))
}

/// ½∫₀¹ w^e R_l(w)/(1+w)^{l+1} dw, e = (n−2∓α)/2.
fn jet_weight(n: usize, l: usize, alpha: C, plus: bool) -> Result<C, FsolError> {
    let r = r_poly(n, l);
    let e = if plus { (alpha + (n as f64 - 2.0)) / 2.0 } else { (-alpha + (n as f64 - 2.0)) / 2.0 };
    let res = tanh_sinh(
        |w: f64, dw: f64, _| {
            let poly = r.iter().rev().fold(0.0, |acc, c| acc * w + c);
            (e * dw.ln()).exp() * (poly / (1.0 + w).powi(l as i32 + 1))
        },
        0.0,
        1.0,
        1e-14,
    )?;
    Ok(res.value * 0.5)
}

fn jets_block(prof: &NProfile, alpha: C) -> Result<C, FsolError> {
    let n = prof.sig.n();
    let (p, q) = (prof.sig.p as i64, prof.sig.q as i64);
    let (ep, em) = (sgn(p - 1), sgn(q - 1));
    let mut out = C::new(0.0, 0.0);
    for l in 0..=n - 2 {
        let sm = jet_weight(n, l, alpha, false)?;
        let sp = jet_weight(n, l, alpha, true)?;
        let w = -(2f64.powi(l as i32 + 1));
        for (refl, e) in [(false, ep), (true, -em)] {
            let (xm, xp) = x_pair(jet_terms(prof, l, refl), n - l - 2);
            out += (sm * xm + sp * xp) * (w * e);
        }
    }
    Ok(out)
}

fn mid_block(prof: &NProfile, alpha: C, dropped: &[Resonance]) -> C {
    let n = prof.sig.n();
    let (p, q) = (prof.sig.p as i64, prof.sig.q as i64);
    let (ep, em) = (sgn(p - 1), sgn(q - 1));
    let xs: Vec<(C, C)> = (0..=n - 2).map(|l| x_pair(jet_terms(prof, l, false), n - l - 2)).collect();
    let mut out = C::new(0.0, 0.0);
    for k in -p + 1..q {
        let mu = (2 * k + p - q) as f64;
        let (j, sg) = if k >= 0 { (k + p - 1, 1.0f64) } else { (-k + q - 1, -1.0) };
        let drop_m = dropped.iter().any(|r| r.k == k && r.sign == '−');
        let drop_p = dropped.iter().any(|r| r.k == k && r.sign == '+');
        for (l, &(xm, xp)) in xs.iter().enumerate() {
            let mut coef = 0.0;
            for i in 0..=(n - 2 - l) as i64 {
                let d = n as i64 - 2 - i;
                coef += sgn(i + 1) * sgn(i) * binom(j, i) * binom(d, l as i64) * (-0.5f64).powi((d - l as i64) as i32);
            }
            coef *= sgn(n as i64 - 1);
            let mut term = C::new(0.0, 0.0);
            if !drop_m {
                term += xm / (-alpha + mu);
            }
            if !drop_p {
                term += xp / (alpha + mu);
            }
            let e = if k >= 0 { ep } else { em };
            out += term * (e * coef * sg.powi(l as i32) * -(2f64.powi(l as i32 + 1)));
        }
    }
    out
}

fn main_block(prof: &NProfile, alpha: C, grid: &PhiGrid) -> Result<C, FsolError> {
    let n = prof.sig.n();
    let (p, q) = (prof.sig.p as i64, prof.sig.q as i64);
    let (ep, em) = (sgn(p - 1), sgn(q - 1));
    let nf = n as f64;
    let half_b = beta((-alpha + nf) / 2.0, (alpha + nf) / 2.0)? * 0.5;
    let pre = half_b * (sgn(n as i64) * factorial(n as u32 - 1) * 4f64.powi(n as i32));
    let rule = PolarRule::new(grid, prof.a, prof.b);
    let val = rule.integrate(|nd| {
        let rn = nd.rho.powi(n as i32);
        let kp = (I * alpha * nd.theta).exp() * prof.g(nd.s, &[nd.t]) * ep;
        let km = (-I * alpha * nd.theta).exp() * prof.g(-nd.s, &[nd.t]) * -em;
        (kp + km) / rn
    });
    Ok(val * pre)
}

/// Resonances of α that the relative pairing drops; resonances outside
/// the middle block make the jet weights diverge.
fn dropped_sectors(alpha: &AlphaParam) -> Result<Vec<Resonance>, FsolError> {
    let (p, q) = (alpha.sig.p as i64, alpha.sig.q as i64);
    let res = alpha.resonances();
    for r in &res {
        if r.k <= -p || r.k >= q {
            return Err(FsolError::Pole(format!(
                "resonance at k = {} lies outside the middle block; the pairing has a pole at alpha = {}",
                r.k, alpha.alpha
            )));
        }
    }
    Ok(res)
}

/// All three blocks, unnormalized.
pub fn phi_breakdown(g: &TestFunction, alpha: &AlphaParam, grid: &PhiGrid) -> Result<PhiBreakdown, FsolError> {
    check_inputs(g, alpha)?;
    let dropped = dropped_sectors(alpha)?;
    let prof = NProfile::new(g);
    let a = alpha.alpha;
    Ok(PhiBreakdown {
        main: main_block(&prof, a, grid)?,
        jets: jets_block(&prof, a)?,
        mid: mid_block(&prof, a, &dropped),
        dropped,
    })
}

/// ⟨Φ_α, g⟩ on `grid`, with the change against the next coarser grid as
/// the error estimate.
pub fn phi_pair_with(g: &TestFunction, alpha: &AlphaParam, grid: &PhiGrid) -> Result<PhiPairing, FsolError> {
    let bd = phi_breakdown(g, alpha, grid)?;
    let p = inversion_constant(&g.sig);
    let value = bd.total() / p;
    let coarse = main_block(&NProfile::new(g), alpha.alpha, &grid.coarser())?;
    let mut notes = vec![format!(
        "polar grid: {} x 10 radial panels + {} tail nodes, {} angular nodes",
        grid.rho_nodes, grid.tail_nodes, grid.theta_nodes
    )];
    if !bd.dropped.is_empty() {
        let list: Vec<String> = bd.dropped.iter().map(|r| format!("k={} ({})", r.k, r.sign)).collect();
        notes.push(format!("relative mode: resonant sectors dropped: {}", list.join(", ")));
    }
    Ok(PhiPairing {
        result: PairingResult {
            value,
            error_estimate: (bd.main - coarse).norm() / p,
            notes,
            ..Default::default()
        },
        breakdown: bd,
    })
}

/// ⟨Φ_α, g⟩ on the default grid.
pub fn phi_pair(g: &TestFunction, alpha: &AlphaParam) -> Result<PairingResult, FsolError> {
    Ok(phi_pair_with(g, alpha, &PhiGrid::default())?.result)
}

/// Gauss-Legendre nodes on (0, Λ] shared by the spectral routes.
fn lambda_nodes(grid: &InversionGrid, b: f64) -> Vec<(f64, f64)> {
    let lam_max = grid.cutoff(b);
    let rule = gl_rule(grid.nodes);
    let width = lam_max / grid.panels as f64;
    (0..grid.panels)
        .flat_map(|i| rule.mapped(i as f64 * width, (i + 1) as f64 * width).collect::<Vec<_>>())
        .collect()
}

/// Independent route: P⁻¹ ∫ Σ_k ⟨S_{λ,k}, g⟩ |λ|^{n−1} / (−(μ_k − α sgn λ)) dλ,
/// truncated to |k| < K and |λ| ≤ Λ. Resonant sectors are skipped.
pub fn spectral_phi_pair(g: &TestFunction, alpha: &AlphaParam, grid: &InversionGrid) -> Result<PairingResult, FsolError> {
    check_inputs(g, alpha)?;
    let prof = NProfile::new(g);
    let params = FParams::from_signature(&g.sig);
    let kk = grid.k_max as i64;
    let ks: Vec<i64> = (-(kk - 1)..kk).filter(|&k| params.laguerre_degree(k) >= 0).collect();
    let n = params.n as i32;
    let a = alpha.alpha;
    let nodes = lambda_nodes(grid, g.b);
    use rayon::prelude::*;
    let parts: Vec<C> = nodes
        .par_iter()
        .map(|&(lam, w)| {
            let mut acc = C::new(0.0, 0.0);
            for l in [lam, -lam] {
                let sg = l.signum();
                for (v, &k) in s_pair_range(&prof, l, &ks).into_iter().zip(&ks) {
                    let den = -(C::new(params.mu(k), 0.0) - a * sg);
                    if den.norm() < 1e-12 {
                        continue;
                    }
                    acc += v / den;
                }
            }
            acc * (w * lam.powi(n - 1))
        })
        .collect();
    let raw: C = parts.into_iter().sum();
    Ok(PairingResult {
        value: raw / inversion_constant(&g.sig),
        k_max: Some(grid.k_max as i64),
        lambda_max: Some(grid.cutoff(g.b)),
        notes: vec!["spectral sum route".into()],
        ..Default::default()
    })
}

/// Σ over resonant (k, ±) of ∫_{±λ>0} ⟨S_{λ,k}, f^∨⟩ |λ|ⁿ dλ, the part of
/// the inversion integral a relative pairing cannot see. A '−' resonance
/// (μ = α) lives on λ > 0, a '+' resonance (μ = −α) on λ < 0.
pub fn resonant_defect(f: &TestFunction, alpha: &AlphaParam, grid: &InversionGrid) -> Result<C, FsolError> {
    let res = alpha.resonances();
    if res.is_empty() {
        return Ok(C::new(0.0, 0.0));
    }
    let prof = NProfile::new(&involution(f));
    let n = f.sig.n() as i32;
    let nodes = lambda_nodes(grid, f.b);
    let mut acc = C::new(0.0, 0.0);
    for r in &res {
        let side = if r.sign == '−' { 1.0 } else { -1.0 };
        for &(lam, w) in &nodes {
            acc += s_pair_range(&prof, side * lam, &[r.k])[0] * (w * lam.powi(n));
        }
    }
    Ok(acc)
}

#[derive(Debug, Clone, PartialEq)]
pub struct FundamentalReport {
    /// ⟨Φ_α, (L_α f)^∨⟩.
    pub value: C,
    /// f(e).
    pub target: C,
    /// |value − target| / max(1, |target|).
    pub residual: f64,
    pub relative: bool,
    /// Z/P for the dropped sectors (zero unless relative).
    pub defect: C,
    /// |value + Z/P − target| / max(1, |target|): the relative identity.
    pub relative_residual: f64,
    pub error_estimate: f64,
    pub notes: Vec<String>,
}

/// Checks ⟨Φ_α, (L_α f)^∨⟩ = f(e). A resonant α (built with
/// [`AlphaParam::unchecked`]) yields the relative identity, in which the
/// resonant sectors' share of f(e) is missing; both residuals are reported.
pub fn verify_fundamental_report(f: &TestFunction, alpha: &AlphaParam, grid: &PhiGrid) -> Result<FundamentalReport, FsolError> {
    let lf = apply_operator(OperatorId::LAlpha(alpha.alpha), f)?;
    let g = involution(&lf);
    let pr = phi_pair_with(&g, alpha, grid)?;
    let target = f.eval(&vec![0.0; f.sig.dim()]);
    let scale = target.norm().max(1.0);
    let relative = !pr.breakdown.dropped.is_empty();
    let defect = if relative {
        resonant_defect(f, alpha, &InversionGrid::default())? / inversion_constant(&f.sig)
    } else {
        C::new(0.0, 0.0)
    };
    let value = pr.result.value;
    Ok(FundamentalReport {
        value,
        target,
        residual: (value - target).norm() / scale,
        relative,
        defect,
        relative_residual: (value + defect - target).norm() / scale,
        error_estimate: pr.result.error_estimate / scale,
        notes: pr.result.notes,
    })
}

/// |⟨Φ_α, (L_α f)^∨⟩ − f(e)| / max(1, |f(e)|) on the default grid.
pub fn verify_fundamental(f: &TestFunction, alpha: &AlphaParam) -> Result<f64, FsolError> {
    Ok(verify_fundamental_report(f, alpha, &PhiGrid::default())?.residual)
}
