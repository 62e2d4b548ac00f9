//! The spectral shift α of L_α = L + iαT.

use crate::error::FsolError;
use num_complex::Complex64 as C;
use tengstrand::{Field, Signature};

/// Integer tolerance for the resonance test.
const RESONANCE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlphaParam {
    pub alpha: C,
    pub sig: Signature,
}

/// A k at which 2k+p−q±α = 0; `sign` is '+' or '−' as in ±α.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Resonance {
    pub k: i64,
    pub sign: char,
}

impl AlphaParam {
    /// Checked constructor: rejects α with 2k+p−q±α = 0 for some k ∈ ℤ.
    pub fn new(alpha: C, sig: Signature) -> Result<Self, FsolError> {
        let a = Self::unchecked(alpha, sig)?;
        if let Some(r) = a.resonances().first() {
            return Err(FsolError::Resonance { k: r.k, sign: r.sign, alpha: format!("{alpha}") });
        }
        Ok(a)
    }

    /// Skips the resonance test. Pairings built from such a parameter drop
    /// the resonant spectral sectors (a relative fundamental solution).
    pub fn unchecked(alpha: C, sig: Signature) -> Result<Self, FsolError> {
        if sig.field != Field::Complex {
            return Err(FsolError::Domain("alpha parameters live on the complex field".into()));
        }
        if !alpha.re.is_finite() || !alpha.im.is_finite() {
            return Err(FsolError::Domain(format!("alpha = {alpha} is not finite")));
        }
        Ok(AlphaParam { alpha, sig })
    }

    pub fn real(alpha: f64, sig: Signature) -> Result<Self, FsolError> {
        Self::new(C::new(alpha, 0.0), sig)
    }

    pub fn n(&self) -> usize {
        self.sig.n()
    }

    /// All k with 2k+p−q±α = 0. Only a real integer α of the parity of
    /// p−q can resonate, and then exactly one k per sign.
    pub fn resonances(&self) -> Vec<Resonance> {
        let a = self.alpha;
        if a.im.abs() > RESONANCE_TOL {
            return Vec::new();
        }
        let r = a.re.round();
        if (a.re - r).abs() > RESONANCE_TOL {
            return Vec::new();
        }
        let d = self.sig.p as i64 - self.sig.q as i64;
        let r = r as i64;
        let mut out = Vec::new();
        // 2k + d + α = 0 and 2k + d − α = 0
        for (sign, num) in [('+', -d - r), ('−', -d + r)] {
            if num.rem_euclid(2) == 0 {
                out.push(Resonance { k: num / 2, sign });
            }
        }
        out
    }

    pub fn is_resonant(&self) -> bool {
        !self.resonances().is_empty()
    }
}
