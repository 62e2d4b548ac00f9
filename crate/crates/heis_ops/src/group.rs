use crate::algebra::{conj, mul};
use crate::error::HeisError;
use tengstrand::Signature;

#[derive(Debug, Clone, PartialEq)]
pub struct GroupElement {
    pub v: Vec<f64>,
    pub zeta: Vec<f64>,
}

impl GroupElement {
    pub fn identity(sig: &Signature) -> Self {
        GroupElement { v: vec![0.0; sig.d_real()], zeta: vec![0.0; sig.center_dim()] }
    }

    pub fn new(sig: &Signature, v: Vec<f64>, zeta: Vec<f64>) -> Result<Self, HeisError> {
        let g = GroupElement { v, zeta };
        g.check(sig)?;
        Ok(g)
    }

    /// (v, ζ)⁻¹ = (−v, −ζ), since Im B(v, v) = 0.
    pub fn inverse(&self) -> Self {
        GroupElement {
            v: self.v.iter().map(|x| -x).collect(),
            zeta: self.zeta.iter().map(|x| -x).collect(),
        }
    }

    /// Flat real coordinates (v, ζ).
    pub fn coords(&self) -> Vec<f64> {
        let mut x = self.v.clone();
        x.extend_from_slice(&self.zeta);
        x
    }

    pub fn from_coords(sig: &Signature, x: &[f64]) -> Self {
        let d = sig.d_real();
        GroupElement { v: x[..d].to_vec(), zeta: x[d..].to_vec() }
    }

    fn check(&self, sig: &Signature) -> Result<(), HeisError> {
        if self.v.len() != sig.d_real() || self.zeta.len() != sig.center_dim() {
            return Err(HeisError::SignatureMismatch(format!(
                "element has dims ({}, {}), signature {sig} needs ({}, {})",
                self.v.len(),
                self.zeta.len(),
                sig.d_real(),
                sig.center_dim()
            )));
        }
        Ok(())
    }
}

/// Im B(v, w) with B(v,w) = Σ_r ε_r v_r w̄_r.
pub fn im_b(sig: &Signature, v: &[f64], w: &[f64]) -> Vec<f64> {
    let fd = sig.field.dim();
    let mut out = vec![0.0; sig.center_dim()];
    for r in 0..sig.n() {
        let prod = mul(sig.field, &v[r * fd..(r + 1) * fd], &conj(&w[r * fd..(r + 1) * fd]));
        let e = sig.eps(r);
        for (o, p) in out.iter_mut().zip(&prod[1..]) {
            *o += e * p;
        }
    }
    out
}

/// (v,ζ)(v′,ζ′) = (v+v′, ζ+ζ′ − ½ Im B(v,v′)).
pub fn group_mul(x: &GroupElement, y: &GroupElement, sig: &Signature) -> Result<GroupElement, HeisError> {
    x.check(sig)?;
    y.check(sig)?;
    let ib = im_b(sig, &x.v, &y.v);
    Ok(GroupElement {
        v: x.v.iter().zip(&y.v).map(|(a, b)| a + b).collect(),
        zeta: x
            .zeta
            .iter()
            .zip(&y.zeta)
            .zip(&ib)
            .map(|((a, b), c)| a + b - 0.5 * c)
            .collect(),
    })
}
