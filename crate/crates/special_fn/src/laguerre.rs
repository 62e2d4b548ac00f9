//! Generalized Laguerre polynomials L_k^m by the three-term recurrence.

use crate::scalar::{cst, Real};
use num_complex::Complex;

/// L_k^m(t) via (j+1)L_{j+1} = (2j+m+1-t)L_j - (j+m)L_{j-1}.
pub fn laguerre<T: Real>(k: usize, m: usize, t: T) -> T {
    let one = T::one();
    if k == 0 {
        return one;
    }
    let mf = cst::<T>(m as f64);
    let mut l0 = one;
    let mut l1 = mf + one - t;
    for j in 1..k {
        let jf = cst::<T>(j as f64);
        let l2 = ((jf + jf + mf + one - t) * l1 - (jf + mf) * l0) / (jf + one);
        l0 = l1;
        l1 = l2;
    }
    l1
}

/// L_0^m(t), ..., L_K^m(t) in one sweep.
pub fn laguerre_table<T: Real>(kmax: usize, m: usize, t: T) -> Vec<T> {
    let one = T::one();
    let mf = cst::<T>(m as f64);
    let mut out = Vec::with_capacity(kmax + 1);
    out.push(one);
    if kmax == 0 {
        return out;
    }
    out.push(mf + one - t);
    for j in 1..kmax {
        let jf = cst::<T>(j as f64);
        let v = ((jf + jf + mf + one - t) * out[j] - (jf + mf) * out[j - 1]) / (jf + one);
        out.push(v);
    }
    out
}

/// Residual of the truncated generating identity, with a flag for the
/// slowly convergent regime |z| ≥ 0.9.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeneratingResidual<T> {
    pub residual: T,
    pub divergence_warning: bool,
}

/// |Σ_{k≤K} L_k^{n-1}(t) z^k - (1-z)^{-n} exp(-zt/(1-z))|.
///
/// ```
/// let r = special_fn::laguerre_generating_residual(2, 1.0, num_complex::Complex64::new(0.3, 0.0), 100);
/// assert!(r.residual < 1e-10 && !r.divergence_warning);
/// ```
pub fn laguerre_generating_residual<T: Real>(
    n: usize,
    t: T,
    z: Complex<T>,
    kmax: usize,
) -> GeneratingResidual<T> {
    assert!(n >= 1, "generating identity needs n >= 1");
    let tab = laguerre_table(kmax, n - 1, t);
    let mut acc = Complex::new(T::zero(), T::zero());
    let mut zk = Complex::new(T::one(), T::zero());
    for l in &tab {
        acc = acc + zk * *l;
        zk = zk * z;
    }
    let one = Complex::new(T::one(), T::zero());
    let omz = one - z;
    let closed = omz.powi(-(n as i32)) * (-(z * t) / omz).exp();
    GeneratingResidual {
        residual: (acc - closed).norm(),
        divergence_warning: z.norm() >= cst::<T>(0.9),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        assert_eq!(laguerre(0, 5, 7.3), 1.0);
        assert_eq!(laguerre(1, 1, 3.0), -1.0);
        assert!((laguerre(2, 0, 1.0f64) + 0.5).abs() < 1e-15);
    }

    #[test]
    fn table_matches_pointwise() {
        let tab = laguerre_table(30, 3, 2.5);
        for (k, v) in tab.iter().enumerate() {
            assert_eq!(*v, laguerre(k, 3, 2.5));
        }
    }
}
