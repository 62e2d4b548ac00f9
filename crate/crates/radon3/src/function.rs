//! Functions on ℝ³: polynomial × Gaussian in closed form, or an opaque
//! kernel that carries a decay certificate.

use num_complex::Complex64 as C;
use special_fn::gamma::gamma_real;
use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

/// Σ c_β z^β e^{−a|z|²}.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyGauss {
    pub a: f64,
    pub terms: BTreeMap<[u32; 3], f64>,
}

/// ∫_ℝ x^k e^{−a x²} dx.
pub fn gauss_moment(k: u32, a: f64) -> f64 {
    if k % 2 == 1 {
        return 0.0;
    }
    let h = (k as f64 + 1.0) / 2.0;
    gamma_real(h).expect("positive argument") * a.powf(-h)
}

impl PolyGauss {
    pub fn gaussian(a: f64) -> Self {
        Self::monomial(a, [0, 0, 0], 1.0)
    }

    pub fn monomial(a: f64, beta: [u32; 3], c: f64) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(beta, c);
        PolyGauss { a, terms }
    }

    pub fn zero(a: f64) -> Self {
        PolyGauss { a, terms: BTreeMap::new() }
    }

    pub fn add_term(&mut self, beta: [u32; 3], c: f64) {
        *self.terms.entry(beta).or_insert(0.0) += c;
        if self.terms[&beta] == 0.0 {
            self.terms.remove(&beta);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn poly(&self, z: &[f64; 3]) -> f64 {
        self.terms
            .iter()
            .map(|(b, c)| c * z[0].powi(b[0] as i32) * z[1].powi(b[1] as i32) * z[2].powi(b[2] as i32))
            .sum()
    }

    pub fn eval(&self, z: &[f64; 3]) -> f64 {
        let r2 = z[0] * z[0] + z[1] * z[1] + z[2] * z[2];
        self.poly(z) * (-self.a * r2).exp()
    }

    /// ∫_{ℝ³}, exact.
    pub fn integral(&self) -> f64 {
        self.terms
            .iter()
            .map(|(b, c)| c * b.iter().map(|&k| gauss_moment(k, self.a)).product::<f64>())
            .sum()
    }

    /// ∂/∂z_i, staying in the family.
    pub fn derivative(&self, i: usize) -> Self {
        let mut out = Self::zero(self.a);
        for (b, c) in &self.terms {
            if b[i] > 0 {
                let mut m = *b;
                m[i] -= 1;
                out.add_term(m, c * b[i] as f64);
            }
            let mut m = *b;
            m[i] += 1;
            out.add_term(m, -2.0 * self.a * c);
        }
        out
    }

    /// Δ, symbolically.
    pub fn laplacian(&self) -> Self {
        let mut out = Self::zero(self.a);
        for i in 0..3 {
            for (b, c) in &self.derivative(i).derivative(i).terms {
                out.add_term(*b, *c);
            }
        }
        out
    }

    /// ĝ(ω) = (2π)^{−3} ∫ g(y) e^{−i⟨ω,y⟩} dy, closed form.
    pub fn fourier(&self, w: &[f64; 3]) -> C {
        let mut acc = C::new(0.0, 0.0);
        let kmax = self.terms.keys().flat_map(|b| b.iter().copied()).max().unwrap_or(0);
        let tables: Vec<Vec<C>> = w.iter().map(|&wi| ft1_table(kmax, self.a, wi)).collect();
        for (b, c) in &self.terms {
            acc += tables[0][b[0] as usize] * tables[1][b[1] as usize] * tables[2][b[2] as usize] * *c;
        }
        acc / (2.0 * PI).powi(3)
    }
}

/// ∫ y^k e^{−ay²} e^{−iwy} dy for k = 0..=kmax. Writing it as P_k(w)e^{−w²/4a},
/// P_{k+1} = i (P_k′ − w/(2a) P_k).
fn ft1_table(kmax: u32, a: f64, w: f64) -> Vec<C> {
    let i = C::new(0.0, 1.0);
    let mut p: Vec<C> = vec![C::new((PI / a).sqrt(), 0.0)];
    let e = (-w * w / (4.0 * a)).exp();
    let eval = |p: &[C]| p.iter().rev().fold(C::new(0.0, 0.0), |acc, c| acc * w + c);
    let mut out = vec![eval(&p) * e];
    for _ in 0..kmax {
        let mut next = vec![C::new(0.0, 0.0); p.len() + 1];
        for (k, c) in p.iter().enumerate() {
            if k > 0 {
                next[k - 1] += c * k as f64 * i;
            }
            next[k + 1] -= c * i / (2.0 * a);
        }
        p = next;
        out.push(eval(&p) * e);
    }
    out
}

/// |F(z)| ≤ M (1 + |z|/scale)^{−exponent}; plane integrals need exponent > 2.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecayCertificate {
    pub exponent: f64,
    pub scale: f64,
}

pub type Kernel = Arc<dyn Fn(&[f64; 3]) -> f64 + Send + Sync>;

#[derive(Clone)]
pub enum R3Function {
    Gauss(PolyGauss),
    Kernel { f: Kernel, certificate: Option<DecayCertificate> },
}

impl fmt::Debug for R3Function {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            R3Function::Gauss(g) => write!(f, "Gauss({g:?})"),
            R3Function::Kernel { certificate, .. } => write!(f, "Kernel {{ certificate: {certificate:?} }}"),
        }
    }
}

impl R3Function {
    pub fn kernel<F: Fn(&[f64; 3]) -> f64 + Send + Sync + 'static>(f: F, certificate: Option<DecayCertificate>) -> Self {
        R3Function::Kernel { f: Arc::new(f), certificate }
    }

    pub fn eval(&self, z: &[f64; 3]) -> f64 {
        match self {
            R3Function::Gauss(g) => g.eval(z),
            R3Function::Kernel { f, .. } => f(z),
        }
    }
}

impl From<PolyGauss> for R3Function {
    fn from(g: PolyGauss) -> Self {
        R3Function::Gauss(g)
    }
}
