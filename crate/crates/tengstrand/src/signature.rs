use crate::error::TengError;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Field {
    Complex,
    Quaternionic,
}

impl Field {
    /// Real dimension of one 𝔽-slot.
    pub fn dim(self) -> usize {
        match self {
            Field::Complex => 2,
            Field::Quaternionic => 4,
        }
    }

    /// Dimension of Im 𝔽, which is also the dimension of the center.
    pub fn imag_dim(self) -> usize {
        self.dim() - 1
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Complex => write!(f, "complex"),
            Field::Quaternionic => write!(f, "quat"),
        }
    }
}

/// (p, q, 𝔽). Real coordinates are laid out as the n slots of 𝔽ⁿ, each
/// slot contributing `field.dim()` consecutive reals, followed by the
/// center coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Signature {
    pub p: usize,
    pub q: usize,
    pub field: Field,
}

impl Signature {
    pub fn new(p: usize, q: usize, field: Field) -> Result<Self, TengError> {
        if p == 0 || q == 0 {
            return Err(TengError::Signature(format!(
                "p and q must both be at least 1, got ({p}, {q})"
            )));
        }
        Ok(Signature { p, q, field })
    }

    pub fn complex(p: usize, q: usize) -> Self {
        Self::new(p, q, Field::Complex).expect("valid signature")
    }

    pub fn quat(p: usize, q: usize) -> Self {
        Self::new(p, q, Field::Quaternionic).expect("valid signature")
    }

    pub fn n(&self) -> usize {
        self.p + self.q
    }

    pub fn d_real(&self) -> usize {
        self.n() * self.field.dim()
    }

    pub fn center_dim(&self) -> usize {
        self.field.imag_dim()
    }

    /// Total number of real coordinates of the group.
    pub fn dim(&self) -> usize {
        self.d_real() + self.center_dim()
    }

    /// n for ℂ, 2n for ℍ: half the real dimension of 𝔽ⁿ.
    pub fn n_eff(&self) -> usize {
        self.d_real() / 2
    }

    /// Real dimensions of the positive and negative blocks.
    pub fn block_dims(&self) -> (usize, usize) {
        (self.p * self.field.dim(), self.q * self.field.dim())
    }

    /// Half block dimensions (p', q'): (p, q) for ℂ, (2p, 2q) for ℍ.
    pub fn half_blocks(&self) -> (usize, usize) {
        let (d1, d2) = self.block_dims();
        (d1 / 2, d2 / 2)
    }

    /// ε_r = +1 on the first p slots, −1 after.
    pub fn eps(&self, slot: usize) -> f64 {
        if slot < self.p {
            1.0
        } else {
            -1.0
        }
    }

    /// The same (p, q) over ℍ viewed as a complex signature (2p, 2q).
    pub fn doubled(&self) -> Signature {
        Signature::complex(2 * self.p, 2 * self.q)
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{};{})", self.p, self.q, self.field)
    }
}
