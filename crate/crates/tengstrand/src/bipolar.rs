use crate::error::TengError;
use crate::signature::Signature;

/// ρ = |u|² + |w|², τ = |u|² − |w|², with the unit directions of the two
/// blocks. A vanishing block leaves its direction undefined.
#[derive(Debug, Clone, PartialEq)]
pub struct Bipolar {
    pub rho: f64,
    pub tau: f64,
    pub omega_u: Option<Vec<f64>>,
    pub omega_v: Option<Vec<f64>>,
}

impl Bipolar {
    pub fn degenerate(&self) -> bool {
        self.omega_u.is_none() || self.omega_v.is_none()
    }

    /// Rebuild v from (ρ, τ, ω_u, ω_v); a missing direction means a zero block.
    pub fn reconstruct(&self, sig: &Signature) -> Vec<f64> {
        let (d1, d2) = sig.block_dims();
        let ru = ((self.rho + self.tau) / 2.0).max(0.0).sqrt();
        let rw = ((self.rho - self.tau) / 2.0).max(0.0).sqrt();
        let mut v = Vec::with_capacity(d1 + d2);
        match &self.omega_u {
            Some(w) => v.extend(w.iter().map(|x| ru * x)),
            None => v.extend(std::iter::repeat(0.0).take(d1)),
        }
        match &self.omega_v {
            Some(w) => v.extend(w.iter().map(|x| rw * x)),
            None => v.extend(std::iter::repeat(0.0).take(d2)),
        }
        v
    }
}

pub fn bipolar_decompose(v: &[f64], sig: &Signature) -> Result<Bipolar, TengError> {
    let (d1, d2) = sig.block_dims();
    if v.len() != d1 + d2 {
        return Err(TengError::Domain(format!(
            "expected a vector of length {}, got {}",
            d1 + d2,
            v.len()
        )));
    }
    let su: f64 = v[..d1].iter().map(|x| x * x).sum();
    let sw: f64 = v[d1..].iter().map(|x| x * x).sum();
    if su == 0.0 && sw == 0.0 {
        return Err(TengError::Domain("bipolar coordinates need v != 0".into()));
    }
    let dir = |block: &[f64], s: f64| {
        (s > 0.0).then(|| {
            let r = s.sqrt();
            block.iter().map(|x| x / r).collect::<Vec<_>>()
        })
    };
    Ok(Bipolar {
        rho: su + sw,
        tau: su - sw,
        omega_u: dir(&v[..d1], su),
        omega_v: dir(&v[d1..], sw),
    })
}
