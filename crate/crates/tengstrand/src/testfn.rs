//! Polynomial × Gaussian test functions.

use crate::signature::Signature;
use num_complex::Complex64 as C;
use std::collections::BTreeMap;

/// Exponent vector over all real coordinates (v block first, then center).
pub type Multi = Vec<u32>;

/// f(v, ζ) = Σ_β c_β x^β · exp(−a|v|² − b|ζ|²).
///
/// The family is closed under ∂/∂x_i and multiplication by coordinates,
/// which is all the operator layer needs.
#[derive(Debug, Clone, PartialEq)]
pub struct TestFunction {
    pub sig: Signature,
    pub a: f64,
    pub b: f64,
    pub terms: BTreeMap<Multi, C>,
}

impl TestFunction {
    pub fn zero(sig: Signature, a: f64, b: f64) -> Self {
        assert!(a > 0.0 && b > 0.0, "Gaussian rates must be positive");
        TestFunction { sig, a, b, terms: BTreeMap::new() }
    }

    /// exp(−a|v|² − b|ζ|²)
    pub fn gaussian(sig: Signature, a: f64, b: f64) -> Self {
        let mut f = Self::zero(sig, a, b);
        f.terms.insert(vec![0; sig.dim()], C::new(1.0, 0.0));
        f
    }

    pub fn from_terms<I: IntoIterator<Item = (Multi, C)>>(sig: Signature, a: f64, b: f64, terms: I) -> Self {
        let mut f = Self::zero(sig, a, b);
        for (m, c) in terms {
            assert_eq!(m.len(), sig.dim(), "multi-index length must match the group dimension");
            f.add_term(m, c);
        }
        f
    }

    /// Single monomial x^β times the Gaussian.
    pub fn monomial(sig: Signature, a: f64, b: f64, beta: Multi, c: C) -> Self {
        Self::from_terms(sig, a, b, [(beta, c)])
    }

    pub fn add_term(&mut self, m: Multi, c: C) {
        if c == C::new(0.0, 0.0) {
            return;
        }
        let e = self.terms.entry(m.clone()).or_insert(C::new(0.0, 0.0));
        *e += c;
        if *e == C::new(0.0, 0.0) {
            self.terms.remove(&m);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Index of the j-th center coordinate.
    pub fn center_index(&self, j: usize) -> usize {
        self.sig.d_real() + j
    }

    fn same_family(&self, other: &Self) {
        assert_eq!(self.sig, other.sig, "signature mismatch");
        assert!(
            self.a == other.a && self.b == other.b,
            "Gaussian rates must agree to combine test functions"
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.same_family(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), *c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(C::new(-1.0, 0.0)))
    }

    pub fn scale(&self, s: C) -> Self {
        let mut out = Self::zero(self.sig, self.a, self.b);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c * s);
        }
        out
    }

    /// Multiply by the coordinate x_i.
    pub fn mul_coord(&self, i: usize) -> Self {
        let mut out = Self::zero(self.sig, self.a, self.b);
        for (m, c) in &self.terms {
            let mut k = m.clone();
            k[i] += 1;
            out.add_term(k, *c);
        }
        out
    }

    /// Exact ∂/∂x_i.
    pub fn derivative(&self, i: usize) -> Self {
        let rate = if i < self.sig.d_real() { self.a } else { self.b };
        let mut out = Self::zero(self.sig, self.a, self.b);
        for (m, c) in &self.terms {
            if m[i] > 0 {
                let mut k = m.clone();
                k[i] -= 1;
                out.add_term(k, c * m[i] as f64);
            }
            let mut k = m.clone();
            k[i] += 1;
            out.add_term(k, c * (-2.0 * rate));
        }
        out
    }

    /// ∂^α for a multi-index of derivative orders.
    pub fn partial(&self, orders: &[u32]) -> Self {
        let mut out = self.clone();
        for (i, &k) in orders.iter().enumerate() {
            for _ in 0..k {
                out = out.derivative(i);
            }
        }
        out
    }

    /// x ↦ f(−x), which is f(x⁻¹) on the group.
    pub fn reflect(&self) -> Self {
        let mut out = Self::zero(self.sig, self.a, self.b);
        for (m, c) in &self.terms {
            let deg: u32 = m.iter().sum();
            let s = if deg % 2 == 0 { 1.0 } else { -1.0 };
            out.add_term(m.clone(), c * s);
        }
        out
    }

    pub fn conj(&self) -> Self {
        let mut out = Self::zero(self.sig, self.a, self.b);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c.conj());
        }
        out
    }

    pub fn max_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.iter().sum()).max().unwrap_or(0)
    }

    /// Polynomial part at x.
    pub fn poly_eval(&self, x: &[f64]) -> C {
        assert_eq!(x.len(), self.sig.dim());
        let mut acc = C::new(0.0, 0.0);
        for (m, c) in &self.terms {
            let mut mono = 1.0;
            for (xi, &e) in x.iter().zip(m) {
                if e > 0 {
                    mono *= xi.powi(e as i32);
                }
            }
            acc += c * mono;
        }
        acc
    }

    pub fn gauss_eval(&self, x: &[f64]) -> f64 {
        let dv = self.sig.d_real();
        let v2: f64 = x[..dv].iter().map(|t| t * t).sum();
        let z2: f64 = x[dv..].iter().map(|t| t * t).sum();
        (-self.a * v2 - self.b * z2).exp()
    }

    pub fn eval(&self, x: &[f64]) -> C {
        self.poly_eval(x) * self.gauss_eval(x)
    }

    /// ∫ f over the whole group, exact.
    pub fn integral(&self) -> C {
        let dv = self.sig.d_real();
        let mut acc = C::new(0.0, 0.0);
        for (m, c) in &self.terms {
            let mut w = 1.0;
            for (i, &e) in m.iter().enumerate() {
                let rate = if i < dv { self.a } else { self.b };
                w *= gaussian_moment(e, rate);
                if w == 0.0 {
                    break;
                }
            }
            acc += c * w;
        }
        acc
    }

    /// ∫_{𝔽ⁿ} f(v, ζ) dv as a function of the center point, exact.
    pub fn v_integral(&self, zeta: &[f64]) -> C {
        let dv = self.sig.d_real();
        let mut acc = C::new(0.0, 0.0);
        for (m, c) in &self.terms {
            let mut w = 1.0;
            for &e in &m[..dv] {
                w *= gaussian_moment(e, self.a);
                if w == 0.0 {
                    break;
                }
            }
            if w == 0.0 {
                continue;
            }
            for (z, &e) in zeta.iter().zip(&m[dv..]) {
                w *= z.powi(e as i32);
            }
            acc += c * w;
        }
        let z2: f64 = zeta.iter().map(|t| t * t).sum();
        acc * (-self.b * z2).exp()
    }
}

/// ∫_ℝ x^e exp(−r x²) dx.
pub fn gaussian_moment(e: u32, r: f64) -> f64 {
    if e % 2 == 1 {
        return 0.0;
    }
    let h = (e as f64 + 1.0) / 2.0;
    special_fn::gamma::gamma_real(h).expect("positive") / r.powf(h)
}
