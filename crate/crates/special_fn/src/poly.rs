//! Dense univariate polynomials with complex coefficients.

use crate::scalar::{cst, Real};
use num_complex::Complex;

/// Σ c_i x^i, lowest degree first.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Poly<T: Real> {
    pub coeffs: Vec<Complex<T>>,
}

impl<T: Real> Poly<T> {
    pub fn new(coeffs: Vec<Complex<T>>) -> Self {
        let mut p = Poly { coeffs };
        p.trim();
        p
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: Complex<T>) -> Self {
        Poly::new(vec![c])
    }

    /// x ↦ x^k
    pub fn monomial(k: usize) -> Self {
        let mut c = vec![Complex::new(T::zero(), T::zero()); k + 1];
        c[k] = Complex::new(T::one(), T::zero());
        Poly { coeffs: c }
    }

    fn trim(&mut self) {
        while matches!(self.coeffs.last(), Some(c) if c.re == T::zero() && c.im == T::zero()) {
            self.coeffs.pop();
        }
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> Complex<T> {
        self.coeffs
            .get(i)
            .copied()
            .unwrap_or_else(|| Complex::new(T::zero(), T::zero()))
    }

    /// Horner evaluation.
    pub fn eval(&self, x: Complex<T>) -> Complex<T> {
        let mut acc = Complex::new(T::zero(), T::zero());
        for c in self.coeffs.iter().rev() {
            acc = acc * x + *c;
        }
        acc
    }

    pub fn eval_real(&self, x: T) -> Complex<T> {
        self.eval(Complex::new(x, T::zero()))
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Poly::zero();
        }
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| *c * cst::<T>(i as f64))
                .collect(),
        )
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn scale(&self, s: Complex<T>) -> Self {
        Poly::new(self.coeffs.iter().map(|c| *c * s).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Poly::zero();
        }
        let mut out = vec![Complex::new(T::zero(), T::zero()); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j] + *a * *b;
            }
        }
        Poly::new(out)
    }

    /// p(-x)
    pub fn reflect(&self) -> Self {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -*c } else { *c })
                .collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    #[test]
    fn product_and_derivative() {
        let p: Poly<f64> = Poly::new(vec![Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0)]);
        let q = p.mul(&p); // 1 + 2x + x^2
        assert_eq!(q.derivative().coeffs, vec![Complex64::new(2.0, 0.0), Complex64::new(2.0, 0.0)]);
        assert_eq!(q.eval_real(2.0), Complex64::new(9.0, 0.0));
    }
}
