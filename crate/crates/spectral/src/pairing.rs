use crate::error::SpectralError;
use crate::fourier::{center_ft_plus, gauss_moment_ft};
use crate::fpair::{f_lambda_k_pair, f_pair_range, FParams};
use heis_ops::{apply_operator, involution, OperatorId};
use num_complex::Complex64 as C;
use special_fn::quad::gl_rule;
use tengstrand::{Field, NProfile, TestFunction};

#[derive(Debug, Clone, PartialEq, Default)]
pub struct PairingResult {
    pub value: C,
    pub error_estimate: f64,
    pub k_max: Option<i64>,
    pub lambda_max: Option<f64>,
    pub notes: Vec<String>,
}

impl PairingResult {
    pub fn exact(value: C) -> Self {
        PairingResult { value, ..Default::default() }
    }
}

/// λ (complex case) or w (quaternionic case) together with k.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SpectralIndex {
    Complex { lambda: f64, k: i64 },
    Quat { w: [f64; 3], k: i64 },
}

impl SpectralIndex {
    pub fn k(&self) -> i64 {
        match self {
            SpectralIndex::Complex { k, .. } | SpectralIndex::Quat { k, .. } => *k,
        }
    }

    /// |λ| or |w|.
    pub fn radius(&self) -> f64 {
        match self {
            SpectralIndex::Complex { lambda, .. } => lambda.abs(),
            SpectralIndex::Quat { w, .. } => w.iter().map(|x| x * x).sum::<f64>().sqrt(),
        }
    }

    fn field(&self) -> Field {
        match self {
            SpectralIndex::Complex { .. } => Field::Complex,
            SpectralIndex::Quat { .. } => Field::Quaternionic,
        }
    }
}

/// Σ over center sectors of (center Fourier factor) × ⟨F, sector⟩, for all
/// k in `ks` at once. `ft` maps a center multi-index to its Fourier factor.
pub(crate) fn pair_range_with<F: Fn(&[u32]) -> C>(prof: &NProfile, radius: f64, ks: &[i64], ft: F) -> Vec<C> {
    let params = FParams::from_signature(&prof.sig);
    let mut out = vec![C::new(0.0, 0.0); ks.len()];
    for s in &prof.sectors {
        let factor = ft(&s.center);
        if factor == C::new(0.0, 0.0) {
            continue;
        }
        let vals = f_pair_range(&params, radius, ks, &s.pos, &s.neg, prof.a);
        for (o, v) in out.iter_mut().zip(vals) {
            *o += v * factor;
        }
    }
    out
}

/// ⟨S_{λ,k}, f⟩ for several k, complex field.
pub fn s_pair_range(prof: &NProfile, lambda: f64, ks: &[i64]) -> Vec<C> {
    let b = prof.b;
    pair_range_with(prof, lambda.abs(), ks, |beta| gauss_moment_ft(beta[0], b, lambda))
}

/// ⟨φ_{w,k}, f⟩ for several k, quaternionic field.
pub fn phi_pair_range(prof: &NProfile, w: &[f64; 3], ks: &[i64]) -> Vec<C> {
    let b = prof.b;
    let r = w.iter().map(|x| x * x).sum::<f64>().sqrt();
    pair_range_with(prof, r, ks, |beta| center_ft_plus(beta, b, w))
}

fn check(idx: &SpectralIndex, f: &TestFunction) -> Result<(), SpectralError> {
    if idx.field() != f.sig.field {
        return Err(SpectralError::Domain(format!(
            "spectral index for {} used with a {} test function",
            idx.field(),
            f.sig.field
        )));
    }
    if idx.radius() == 0.0 {
        return Err(SpectralError::Domain("lambda (or |w|) must be nonzero".into()));
    }
    let params = FParams::from_signature(&f.sig);
    let j = params.laguerre_degree(idx.k());
    if j < 0 {
        return Err(SpectralError::Index(j));
    }
    Ok(())
}

/// ⟨S_{λ,k}, f⟩ or ⟨φ_{w,k}, f⟩ in closed form.
pub fn pair(idx: &SpectralIndex, f: &TestFunction) -> Result<C, SpectralError> {
    check(idx, f)?;
    let prof = NProfile::new(f);
    Ok(match idx {
        SpectralIndex::Complex { lambda, k } => s_pair_range(&prof, *lambda, &[*k])[0],
        SpectralIndex::Quat { w, k } => phi_pair_range(&prof, w, &[*k])[0],
    })
}

/// ⟨S_{λ,k}, f⟩ = ∫ e^{−iλt} ⟨F_{λ,k}, f(·,t)⟩ dt.
pub fn s_lambda_k_pair(lambda: f64, k: i64, f: &TestFunction) -> Result<PairingResult, SpectralError> {
    let v = pair(&SpectralIndex::Complex { lambda, k }, f)?;
    Ok(PairingResult { value: v, k_max: Some(k), ..Default::default() })
}

/// The same pairing with the t-integral done by Gauss-Legendre panels over
/// slices ⟨F_{λ,k}, f(·,t)⟩; `panels` controls resolution.
pub fn s_lambda_k_pair_quad(lambda: f64, k: i64, f: &TestFunction, panels: usize) -> Result<PairingResult, SpectralError> {
    let tmax = (40.0 / f.b).sqrt();
    let rule = gl_rule(20);
    let width = 2.0 * tmax / panels as f64;
    let mut acc = C::new(0.0, 0.0);
    for i in 0..panels {
        let lo = -tmax + i as f64 * width;
        for (t, w) in rule.mapped(lo, lo + width) {
            let slice = f_lambda_k_pair(lambda, k, f, &[t])?.value;
            acc += slice * C::from_polar(w, -lambda * t);
        }
    }
    Ok(PairingResult {
        value: acc,
        notes: vec![format!("t in [-{tmax:.3}, {tmax:.3}], {panels} panels x 20 nodes")],
        ..Default::default()
    })
}

/// ⟨φ_{w,k}, f⟩ = ∫_{ℝ³} e^{i⟨w,z⟩} ⟨θ_{|w|,k}, f(·,z)⟩ dz.
pub fn varphi_w_k_pair(w: [f64; 3], k: i64, f: &TestFunction) -> Result<PairingResult, SpectralError> {
    let v = pair(&SpectralIndex::Quat { w, k }, f)?;
    Ok(PairingResult { value: v, k_max: Some(k), ..Default::default() })
}

/// |⟨S,(Lf)^∨⟩ + |λ|μ⟨S,f^∨⟩| / max(1, |⟨S,f^∨⟩|), μ = 2k+p−q (doubled
/// parameters over ℍ). Transposing L onto the test side is legitimate
/// because L₀ commutes with the involution and L₁ annihilates S.
pub fn eigen_residual_l(idx: &SpectralIndex, f: &TestFunction) -> Result<f64, SpectralError> {
    let params = FParams::from_signature(&f.sig);
    let lf = apply_operator(OperatorId::L, f)?;
    let a = pair(idx, &involution(&lf))?;
    let b = pair(idx, &involution(f))?;
    let ev = idx.radius() * params.mu(idx.k());
    Ok((a + b * ev).norm() / b.norm().max(1.0))
}

/// Complex: |⟨S,(iTf)^∨⟩ − λ⟨S,f^∨⟩| / max(1, |⟨S,f^∨⟩|).
/// Quaternionic: the center Laplacian, |⟨φ,(Uf)^∨⟩ + |w|²⟨φ,f^∨⟩| / max(1, |⟨φ,f^∨⟩|).
pub fn eigen_residual_u(idx: &SpectralIndex, f: &TestFunction) -> Result<f64, SpectralError> {
    let b = pair(idx, &involution(f))?;
    let diff = match idx {
        SpectralIndex::Complex { lambda, .. } => {
            let itf = apply_operator(OperatorId::T, f)?.scale(C::new(0.0, 1.0));
            pair(idx, &involution(&itf))? - b * *lambda
        }
        SpectralIndex::Quat { .. } => {
            let uf = apply_operator(OperatorId::UQuat, f)?;
            pair(idx, &involution(&uf))? + b * idx.radius().powi(2)
        }
    };
    Ok(diff.norm() / b.norm().max(1.0))
}
