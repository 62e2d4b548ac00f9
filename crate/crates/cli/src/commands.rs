use crate::args::{Cmd, FieldArg, GridId, Opts};
use crate::report::{float_value, format_float, Record};
use fsol_complex::{
    abel_constant, c_alpha, c_alpha_tilde, cj_abel, cj_pm, coeff_tables, phi_pair_literal, phi_pair_with, verify_fundamental_report,
    AlphaParam, FsolError, PhiGrid, Sign,
};
use fsol_quat::{
    c0_value, phi_quat_literal, phi_quat_pair_with, resolve_variant, verify_fundamental_quat_report, C0Variant, Phi11Grid, QuatError,
    QuatGrid, QuatKernelConfig, SeriesGrid,
};
use heis_ops::{apply_operator, involution, GroupElement, OperatorId};
use num_complex::Complex64 as C;
use radon3::{duality, inversion_residual_with, PolyGauss, R3Function, RadonGrid, SphereMeasure};
use serde_json::{json, Map, Value};
use spectral::{eigen_residual_l, eigen_residual_u, inversion_constant, inversion_synthesize, InversionGrid, SpectralIndex};
use std::fmt::Display;
use tengstrand::{n_transform, Field, QuadGrid, Signature, TestFunction};

#[derive(Debug, Clone, PartialEq)]
pub enum CmdError {
    /// Bad flag value; names the flag.
    Usage(String),
    /// A library error, carrying the module error name.
    Numeric(String),
}

impl Display for CmdError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CmdError::Usage(s) => write!(f, "usage error: {s}"),
            CmdError::Numeric(s) => write!(f, "numerical error: {s}"),
        }
    }
}

fn num<E: Display>(e: E) -> CmdError {
    CmdError::Numeric(e.to_string())
}

type Out = Result<Vec<Record>, CmdError>;

/// The full flag set of a run, as stored in the manifest.
pub fn params_of(o: &Opts) -> Map<String, Value> {
    let opt_f = |x: Option<f64>| x.map(float_value).unwrap_or(Value::Null);
    let mut m = Map::new();
    m.insert("p".into(), json!(o.p));
    m.insert("q".into(), json!(o.q));
    m.insert("field".into(), json!(field_name(o.field)));
    m.insert("alpha_re".into(), float_value(o.alpha.re));
    m.insert("alpha_im".into(), float_value(o.alpha.im));
    m.insert("n".into(), json!(o.n));
    m.insert("j".into(), json!(o.j));
    m.insert("K".into(), json!(o.k));
    m.insert("Lambda".into(), opt_f(o.lambda));
    m.insert("grid".into(), json!(grid_name(o.grid)));
    m.insert("tol".into(), opt_f(o.tol));
    m.insert("a".into(), float_value(o.a));
    m.insert("b".into(), float_value(o.b));
    m.insert("tau".into(), float_value(o.tau));
    m.insert("t".into(), o.t.as_ref().map(|p| Value::Array(p.0.iter().map(|&x| float_value(x)).collect())).unwrap_or(Value::Null));
    m
}

fn field_name(f: FieldArg) -> &'static str {
    match f {
        FieldArg::Complex => "complex",
        FieldArg::Quat => "quat",
    }
}

fn grid_name(g: GridId) -> &'static str {
    match g {
        GridId::Coarse => "coarse",
        GridId::Default => "default",
        GridId::Fine => "fine",
    }
}

fn check_opts(o: &Opts) -> Result<(), CmdError> {
    if !(o.a > 0.0) {
        return Err(CmdError::Usage(format!("--a must be positive, got {}", o.a)));
    }
    if !(o.b > 0.0) {
        return Err(CmdError::Usage(format!("--b must be positive, got {}", o.b)));
    }
    if let Some(t) = o.tol {
        if !(t >= 0.0) {
            return Err(CmdError::Usage(format!("--tol must be non-negative, got {t}")));
        }
    }
    if let Some(l) = o.lambda {
        if !(l > 0.0) {
            return Err(CmdError::Usage(format!("--Lambda must be positive, got {l}")));
        }
    }
    if o.k == Some(0) {
        return Err(CmdError::Usage("--K must be at least 1".into()));
    }
    if o.n.is_some_and(|n| n < 2) {
        return Err(CmdError::Usage("--n must be at least 2".into()));
    }
    if o.j == Some(0) {
        return Err(CmdError::Usage("--j must be at least 1".into()));
    }
    Ok(())
}

pub fn execute(cmd: &Cmd) -> Out {
    check_opts(cmd.opts())?;
    match cmd {
        Cmd::Constants(o) => constants(o),
        Cmd::Ntransform(o) => ntransform(o),
        Cmd::SpectralCheck(o) => spectral_check(o),
        Cmd::Invert(o) => invert(o),
        Cmd::PairPhi(o) => match o.field {
            FieldArg::Complex => pair_phi_complex(o),
            FieldArg::Quat => pair_phi_quat(o),
        },
        Cmd::VerifyFsol(o) => match o.field {
            FieldArg::Complex => verify_complex(o),
            FieldArg::Quat => verify_quat(o, "verify-fsol"),
        },
        Cmd::RadonCheck(o) => radon_check(o),
        Cmd::QuatVerify(o) => verify_quat(o, "quat-verify"),
        Cmd::Coeffs(o) => coeffs(o),
    }
}

fn signature(o: &Opts, field: FieldArg) -> Result<Signature, CmdError> {
    let f = match field {
        FieldArg::Complex => Field::Complex,
        FieldArg::Quat => Field::Quaternionic,
    };
    Signature::new(o.p, o.q, f).map_err(|e| CmdError::Usage(format!("--p/--q: {e}")))
}

fn phi_grid(g: GridId) -> PhiGrid {
    match g {
        GridId::Coarse => PhiGrid::default().coarser(),
        GridId::Default => PhiGrid::default(),
        GridId::Fine => PhiGrid { rho_nodes: 128, tail_nodes: 128, theta_nodes: 400 },
    }
}

fn quat_grid(g: GridId) -> QuatGrid {
    let phi11 = Phi11Grid::default();
    match g {
        GridId::Coarse => QuatGrid { phi: phi_grid(g), sphere_extra: 4, phi11: Phi11Grid { tau_nodes: phi11.tau_nodes / 2 } },
        GridId::Default => QuatGrid::default(),
        GridId::Fine => QuatGrid { phi: phi_grid(g), sphere_extra: 8, phi11: phi11.refined() },
    }
}

fn quad_grid(g: GridId) -> QuadGrid {
    match g {
        GridId::Coarse => QuadGrid::coarse(),
        GridId::Default => QuadGrid::default(),
        GridId::Fine => QuadGrid::fine(),
    }
}

fn radon_grid(g: GridId) -> RadonGrid {
    let d = RadonGrid::default();
    match g {
        GridId::Coarse => RadonGrid { sphere_per_angle: 16, ..d },
        GridId::Default => d,
        GridId::Fine => RadonGrid { sphere_per_angle: 32, plane_panels: 8, ..d },
    }
}

fn inversion_grid(g: GridId, lambda: Option<f64>) -> InversionGrid {
    let d = InversionGrid { lambda_max: lambda, ..Default::default() };
    match g {
        GridId::Coarse => InversionGrid { panels: 30, nodes: 16, ..d },
        GridId::Default => d,
        GridId::Fine => InversionGrid { panels: 120, nodes: 32, sphere_per_angle: 12, ..d },
    }
}

fn gaussian(o: &Opts, sig: Signature) -> TestFunction {
    TestFunction::gaussian(sig, o.a, o.b)
}

fn target(f: &TestFunction) -> C {
    f.eval(&vec![0.0; f.sig.dim()])
}

/// Checked α; a resonant α falls back to the relative fundamental solution.
fn alpha_param(o: &Opts, sig: Signature) -> Result<(AlphaParam, Option<String>), CmdError> {
    match AlphaParam::new(o.alpha, sig) {
        Ok(a) => Ok((a, None)),
        Err(e @ FsolError::Resonance { .. }) => {
            let a = AlphaParam::unchecked(o.alpha, sig).map_err(|e| CmdError::Usage(format!("--alpha: {e}")))?;
            Ok((a, Some(format!("{e}; resonant sectors dropped (relative mode)"))))
        }
        Err(e) => Err(CmdError::Usage(format!("--alpha: {e}"))),
    }
}

fn constants(o: &Opts) -> Out {
    let cmd = "constants";
    let n = o.n.unwrap_or((o.p + o.q).max(2));
    let a = o.alpha;
    let ca = c_alpha(n, a).map_err(num)?;
    let ct = c_alpha_tilde(n, a).map_err(num)?;
    let ab = abel_constant(n, a).map_err(num)?;
    let gap = (ab - ca).norm();
    let mut out = vec![
        Record::new(cmd, "c_alpha", ca.re, ca.im).param("n", json!(n)),
        Record::new(cmd, "c_alpha_tilde", ct.re, ct.im).param("n", json!(n)),
        Record::new(cmd, "abel_constant", ab.re, ab.im)
            .param("n", json!(n))
            .note(format!("|abel_constant - c_alpha| = {}", format_float(gap)))
            .gate(gap, o.tol),
    ];
    let js: Vec<usize> = match o.j {
        Some(j) => vec![j],
        None => (1..n).collect(),
    };
    for j in js {
        for (sign, name) in [(Sign::Minus, "cj_minus"), (Sign::Plus, "cj_plus")] {
            let v = cj_pm(n, a, j, sign).map_err(num)?;
            let (w, e) = cj_abel(n, a, j, sign).map_err(num)?;
            let d = (v - w).norm();
            out.push(
                Record::new(cmd, name, v.re, v.im)
                    .param("n", json!(n))
                    .param("j", json!(j))
                    .err(e)
                    .note(format!("abel-summed series: {} {:+}i", format_float(w.re), w.im))
                    .note(format!("|closed - abel| = {}", format_float(d)))
                    .gate(d, o.tol),
            );
        }
    }
    Ok(out)
}

fn ntransform(o: &Opts) -> Out {
    let sig = signature(o, o.field)?;
    let f = gaussian(o, sig);
    let t = match &o.t {
        Some(p) if p.0.len() != sig.center_dim() => {
            return Err(CmdError::Usage(format!("--t: expected {} coordinates, got {}", sig.center_dim(), p.0.len())))
        }
        Some(p) => p.0.clone(),
        None => vec![0.0; sig.center_dim()],
    };
    let (v, e) = n_transform(&f, o.tau, &t, &quad_grid(o.grid));
    Ok(vec![Record::new("ntransform", "n_transform", v.re, v.im)
        .param("tau", float_value(o.tau))
        .param("t", Value::Array(t.iter().map(|&x| float_value(x)).collect()))
        .err(e)
        .note("error estimate: difference to the doubled grid")
        .gate(e, o.tol)])
}

fn spectral_check(o: &Opts) -> Out {
    let cmd = "spectral-check";
    let sig = signature(o, o.field)?;
    let f = gaussian(o, sig);
    let kk = o.k.unwrap_or(2) as i64;
    let radii = match o.lambda {
        Some(l) => vec![l],
        None => vec![0.5, 1.0, 2.0],
    };
    let mut out = Vec::new();
    for r in radii {
        for k in -kk..=kk {
            let idx = match sig.field {
                Field::Complex => SpectralIndex::Complex { lambda: r, k },
                Field::Quaternionic => SpectralIndex::Quat { w: [0.48 * r, -0.6 * r, 0.64 * r], k },
            };
            let rl = eigen_residual_l(&idx, &f).map_err(num)?;
            let ru = eigen_residual_u(&idx, &f).map_err(num)?;
            for (name, v) in [("eigen_residual_l", rl), ("eigen_residual_u", ru)] {
                out.push(Record::new(cmd, name, v, 0.0).param("radius", float_value(r)).param("k", json!(k)).gate(v, o.tol));
            }
        }
    }
    Ok(out)
}

fn invert(o: &Opts) -> Out {
    let cmd = "invert";
    let sig = signature(o, o.field)?;
    let f = gaussian(o, sig);
    let id = GroupElement::identity(&sig);
    let want = target(&f);
    let k_top = o.k.unwrap_or(12);
    let base = inversion_grid(o.grid, o.lambda);
    let mut out = Vec::new();
    let mut last = C::new(0.0, 0.0);
    for k in 1..=k_top {
        let r = inversion_synthesize(&f, &id, &InversionGrid { k_max: k, ..base }).map_err(num)?;
        last = r.value;
        let mut rec = Record::new(cmd, "partial_sum", r.value.re, r.value.im).param("K", json!(k)).err(r.error_estimate).notes(r.notes);
        rec.k_max = r.k_max;
        rec.lambda_max = r.lambda_max;
        out.push(rec);
    }
    let rel = (last - want).norm() / want.norm().max(1e-300);
    out.push(
        Record::new(cmd, "relative_error", rel, 0.0)
            .param("K", json!(k_top))
            .note(format!("target f(e) = {}", format_float(want.re)))
            .gate(rel, o.tol),
    );
    Ok(out)
}

fn pair_phi_complex(o: &Opts) -> Out {
    let cmd = "pair-phi";
    let sig = signature(o, FieldArg::Complex)?;
    let (alpha, res_note) = alpha_param(o, sig)?;
    let g = gaussian(o, sig);
    let grid = phi_grid(o.grid);
    let pr = phi_pair_with(&g, &alpha, &grid).map_err(num)?;
    let p = inversion_constant(&sig);
    let v = pr.result.value;
    let literal = match phi_pair_literal(&g, &alpha, &grid) {
        Ok(lit) => Record::new(cmd, "phi_literal", lit.value.re, lit.value.im)
            .err(lit.error_estimate)
            .notes(lit.notes)
            .note(format!("unnormalized; the corrected pairing carries 1/P with P = {}", format_float(p))),
        Err(e) => Record::new(cmd, "phi_literal", f64::NAN, f64::NAN).note(format!("displayed closed form undefined: {e}")),
    };
    Ok(vec![
        Record::new(cmd, "phi_corrected", v.re, v.im).err(pr.result.error_estimate).notes(pr.result.notes).notes(res_note).notes(swap_note(&sig)),
        literal,
    ])
}

/// For p = q the block swap with t ↦ −t maps L_α to −L_α, so Φ is odd
/// under it and pairs to zero with the (swap invariant) Gaussian.
fn swap_note(sig: &Signature) -> Option<String> {
    (sig.p == sig.q).then(|| "p = q: the Gaussian is block-swap invariant and Phi is odd under the swap, so the pairing vanishes".to_string())
}

/// Fixed (τ, t) sample points of the c₀ variant oracle.
const C0_POINTS: [(f64, f64); 5] = [(0.7, 0.3), (-1.2, 0.5), (1.5, -0.8), (0.4, -0.1), (-0.9, 1.1)];

/// Resolves the c₀ exponent sign on the real-part residual of the Laguerre
/// series; the config stays unresolved unless exactly one variant fits.
pub fn resolve_c0(cmd: &str, n: usize) -> Result<(QuatKernelConfig, Vec<Record>), CmdError> {
    let res = resolve_variant(n, &C0_POINTS, &RadonGrid::default(), &SeriesGrid::default(), 1e-6).map_err(num)?;
    let mut out = Vec::new();
    for ((v, re), (_, lit)) in res.relative_re.iter().zip(&res.relative_literal) {
        out.push(
            Record::new(cmd, "c0_variant_residual_re", *re, 0.0)
                .param("variant", json!(v.to_string()))
                .note(format!("literal (modulus) residual = {}", format_float(*lit))),
        );
    }
    let cfg = match res.selected {
        Some(v) => {
            let c0 = c0_value(n, v);
            out.push(Record::new(cmd, "c0", c0, 0.0).param("variant", json!(v.to_string())).note("selected by the real-part residual"));
            QuatKernelConfig::new(n, v).map_err(num)?.with_resolved(v)
        }
        None => {
            out.push(Record::new(cmd, "c0", f64::NAN, 0.0).note("no unique c0 variant; literal closed form skipped"));
            QuatKernelConfig::new(n, C0Variant::ExponentPlus).map_err(num)?
        }
    };
    Ok((cfg, out))
}

fn pair_phi_quat(o: &Opts) -> Out {
    let cmd = "pair-phi";
    let sig = signature(o, FieldArg::Quat)?;
    let g = gaussian(o, sig);
    let grid = quat_grid(o.grid);
    let (cfg, mut out) = resolve_c0(cmd, sig.n())?;
    let pr = phi_quat_pair_with(&g, &grid).map_err(num)?;
    out.push(Record::new(cmd, "phi_corrected", pr.value.re, pr.value.im).err(pr.error_estimate).notes(pr.notes).notes(swap_note(&sig)));
    match phi_quat_literal(&g, &cfg, &grid.phi11) {
        Ok(lit) => {
            let p = inversion_constant(&sig);
            out.push(
                Record::new(cmd, "phi_literal", lit.value.re, lit.value.im)
                    .err(lit.error_estimate)
                    .notes(lit.notes)
                    .note(format!("unnormalized; the corrected pairing carries 1/P_H with P_H = {}", format_float(p))),
            );
        }
        Err(QuatError::UnresolvedVariant) => {}
        Err(e) => return Err(num(e)),
    }
    Ok(out)
}

fn verify_complex(o: &Opts) -> Out {
    let cmd = "verify-fsol";
    let sig = signature(o, FieldArg::Complex)?;
    let (alpha, res_note) = alpha_param(o, sig)?;
    let f = gaussian(o, sig);
    let grid = phi_grid(o.grid);
    let rep = verify_fundamental_report(&f, &alpha, &grid).map_err(num)?;
    let lf = apply_operator(OperatorId::LAlpha(alpha.alpha), &f).map_err(num)?;
    let scale = rep.target.norm().max(1.0);
    let p = inversion_constant(&sig);
    let (literal, lit_res) = match phi_pair_literal(&involution(&lf), &alpha, &grid) {
        Ok(lit) => {
            let v = lit.value / p;
            let rec = Record::new(cmd, "literal_pairing", v.re, v.im)
                .err(lit.error_estimate / p)
                .notes(lit.notes)
                .note("displayed closed form divided by P");
            (rec, (v - rep.target).norm() / scale)
        }
        Err(e) => (Record::new(cmd, "literal_pairing", f64::NAN, f64::NAN).note(format!("displayed closed form undefined: {e}")), f64::NAN),
    };
    let mut residual = Record::new(cmd, "residual", rep.residual, 0.0)
        .err(rep.error_estimate)
        .note(format!("target f(e) = {}", format_float(rep.target.re)))
        .gate(rep.residual, o.tol);
    if rep.relative {
        residual = residual.note("relative fundamental solution: the resonant share of f(e) is missing");
    }
    Ok(vec![
        Record::new(cmd, "pairing", rep.value.re, rep.value.im).err(rep.error_estimate).notes(rep.notes).notes(res_note),
        residual,
        Record::new(cmd, "relative_residual", rep.relative_residual, 0.0)
            .note(format!("defect Z/P = {} {:+}i", format_float(rep.defect.re), rep.defect.im)),
        literal,
        Record::new(cmd, "literal_residual", lit_res, 0.0),
    ])
}

fn verify_quat(o: &Opts, cmd: &str) -> Out {
    let sig = signature(o, FieldArg::Quat)?;
    let f = gaussian(o, sig);
    let grid = quat_grid(o.grid);
    let (cfg, mut out) = resolve_c0(cmd, sig.n())?;
    let rep = verify_fundamental_quat_report(&f, &cfg, &grid).map_err(num)?;
    out.push(Record::new(cmd, "pairing", rep.value.re, rep.value.im).err(rep.error_estimate).notes(rep.notes));
    out.push(
        Record::new(cmd, "residual", rep.residual, 0.0)
            .err(rep.error_estimate)
            .note(format!("target f(e) = {}", format_float(rep.target.re)))
            .gate(rep.residual, o.tol),
    );
    out.push(
        Record::new(cmd, "relative_residual", rep.relative_residual, 0.0)
            .note(format!("defect Z_H/P_H = {} {:+}i", format_float(rep.defect.re), rep.defect.im)),
    );
    if let (Some(l), Some(r)) = (rep.literal, rep.literal_residual) {
        let ln = l / inversion_constant(&sig);
        out.push(Record::new(cmd, "literal_pairing", ln.re, ln.im).note("displayed closed form divided by P_H"));
        out.push(Record::new(cmd, "literal_residual", r, 0.0));
    }
    Ok(out)
}

/// Evaluation points of the Radon inversion check.
pub const RADON_POINTS: [[f64; 3]; 5] = [[0.0, 0.0, 0.0], [1.0, 0.5, -0.3], [0.2, -0.1, 0.5], [-0.6, 0.3, 0.2], [0.1, 0.8, -0.4]];

fn radon_check(o: &Opts) -> Out {
    let cmd = "radon-check";
    let g = PolyGauss::gaussian(o.a);
    let big_f: R3Function = g.clone().into();
    let grid = radon_grid(o.grid);
    let mut out = Vec::new();
    for z in RADON_POINTS {
        let zv = Value::Array(z.iter().map(|&x| float_value(x)).collect());
        let rn = inversion_residual_with(&big_f, &z, SphereMeasure::Normalized, &grid).map_err(num)?;
        let rs = inversion_residual_with(&big_f, &z, SphereMeasure::Surface, &grid).map_err(num)?;
        out.push(
            Record::new(cmd, "inversion_residual_normalized", rn, 0.0)
                .param("z", zv.clone())
                .note("|Δℛ*ℛF + 2πF| with dξ/(4π)")
                .gate(rn, o.tol),
        );
        out.push(Record::new(cmd, "inversion_residual_surface", rs, 0.0).param("z", zv).note("|Δℛ*ℛF + 2πF| with surface measure dξ"));
    }
    let d = duality(&g, |t, _| (-t * t).exp(), &grid).map_err(num)?;
    out.push(
        Record::new(cmd, "duality_gap", d.gap(), 0.0)
            .note(format!("<RF,G> = {}, <F,R*G> = {}, G(t,xi) = exp(-t^2)", format_float(d.lhs), format_float(d.rhs)))
            .gate(d.gap(), o.tol),
    );
    Ok(out)
}

fn coeffs(o: &Opts) -> Out {
    let cmd = "coeffs";
    let n = o.n.unwrap_or((o.p + o.q).max(2));
    let kmax = o.k.unwrap_or(8);
    let t = coeff_tables(n, kmax).map_err(num)?;
    let mut out = Vec::new();
    for (k, (ra, rq)) in t.a.iter().zip(&t.a_quad).enumerate() {
        for (l, (a, aq)) in ra.iter().zip(rq).enumerate() {
            out.push(Record::new(cmd, "a_kl", *a, 0.0).param("k", json!(k)).param("l", json!(l)).err((a - aq).abs()));
        }
    }
    for (k, row) in t.b.iter().enumerate() {
        for (l, b) in row.iter().enumerate() {
            out.push(Record::new(cmd, "b_kl", *b, 0.0).param("k", json!(k)).param("l", json!(l)));
        }
    }
    for d in &t.ab_report {
        out.push(Record::new(cmd, "ab_definitional", d.definitional, 0.0).param("k", json!(d.k)).param("l", json!(d.l)));
        out.push(
            Record::new(cmd, "ab_closed_form", d.closed_form, 0.0)
                .param("k", json!(d.k))
                .param("l", json!(d.l))
                .note(format!("definitional - closed form = {}", format_float(d.diff()))),
        );
    }
    for (k, row) in t.c.iter().enumerate() {
        for (l, c) in row.iter().enumerate() {
            let mut r = Record::new(cmd, "c_kl", *c, 0.0).param("k", json!(k)).param("l", json!(l));
            if let Some((_, _, g)) = t.c_convention_flags.iter().find(|(a, b, _)| (*a, *b) == (k, l)) {
                r = r.note(format!("generalized binomial convention gives {}", format_float(*g)));
            }
            out.push(r);
        }
    }
    for (j, c) in t.cj0.iter().enumerate() {
        out.push(Record::new(cmd, "cj0", *c, 0.0).param("j", json!(j + 1)));
    }
    let dev = t.a_quad_deviation();
    out.push(
        Record::new(cmd, "a_quad_deviation", dev, 0.0)
            .param("n", json!(n))
            .note(format!("max |a+b definitional - closed form| = {}", format_float(t.max_ab_discrepancy())))
            .gate(dev, o.tol),
    );
    Ok(out)
}
