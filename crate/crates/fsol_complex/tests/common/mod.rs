#![allow(dead_code)]

use num_complex::Complex64 as C;
use tengstrand::{Signature, TestFunction};

pub fn unit(dim: usize, e: &[(usize, u32)]) -> Vec<u32> {
    let mut m = vec![0; dim];
    for &(i, k) in e {
        m[i] = k;
    }
    m
}

pub fn rel(a: C, b: C) -> f64 {
    (a - b).norm() / b.norm().max(1.0)
}

/// Gaussian with extra monomials, p = q = 1, no symmetry in t or v.
pub fn skewed_fn() -> TestFunction {
    let sig = Signature::complex(1, 1);
    let mut f = TestFunction::gaussian(sig, 1.0, 1.0);
    f.add_term(unit(5, &[(0, 2)]), C::new(1.0, 0.0));
    f.add_term(unit(5, &[(4, 1)]), C::new(0.5, 0.2));
    f.add_term(unit(5, &[(4, 2)]), C::new(1.0, 0.0));
    f.add_term(unit(5, &[]), C::new(-0.7, 0.0));
    f
}

/// A second family member with different decay rates, p = 2, q = 1.
pub fn skewed_fn_21() -> TestFunction {
    let sig = Signature::complex(2, 1);
    let mut f = TestFunction::gaussian(sig, 0.8, 1.3);
    f.add_term(unit(7, &[(4, 2)]), C::new(0.6, 0.0));
    f.add_term(unit(7, &[(0, 1), (6, 1)]), C::new(0.0, 0.4));
    f.add_term(unit(7, &[(6, 1)]), C::new(-0.3, 0.1));
    f
}

fn mul_linear(f: &TestFunction, row: &[f64]) -> TestFunction {
    let mut out = TestFunction::zero(f.sig, f.a, f.b);
    for (j, &c) in row.iter().enumerate() {
        if c != 0.0 {
            out = out.add(&f.mul_coord(j).scale(C::new(c, 0.0)));
        }
    }
    out
}

/// v ↦ f(gv, t) for a hyperbolic element of U(1,1) with parameter s. The
/// Gaussian mismatch e^{−a(|gv|² − |v|²)} is Taylor expanded to `degree`.
pub fn hyperbolic_compose(f: &TestFunction, s: f64, degree: u32) -> TestFunction {
    let (ch, sh) = (s.cosh(), s.sinh());
    let g = [
        [ch, 0.0, sh, 0.0, 0.0],
        [0.0, ch, 0.0, sh, 0.0],
        [sh, 0.0, ch, 0.0, 0.0],
        [0.0, sh, 0.0, ch, 0.0],
        [0.0, 0.0, 0.0, 0.0, 1.0],
    ];
    let mut poly = TestFunction::zero(f.sig, f.a, f.b);
    for (m, c) in &f.terms {
        let mut term = TestFunction::from_terms(f.sig, f.a, f.b, [(vec![0; 5], *c)]);
        for (i, &e) in m.iter().enumerate() {
            for _ in 0..e {
                term = mul_linear(&term, &g[i]);
            }
        }
        poly = poly.add(&term);
    }
    let (c2, s2) = ((2.0 * s).cosh() - 1.0, (2.0 * s).sinh());
    let times_e = |h: &TestFunction| -> TestFunction {
        let mut acc = TestFunction::zero(h.sig, h.a, h.b);
        for i in 0..4 {
            acc = acc.add(&h.mul_coord(i).mul_coord(i).scale(C::new(-f.a * c2, 0.0)));
        }
        for (i, j) in [(0, 2), (1, 3)] {
            acc = acc.add(&h.mul_coord(i).mul_coord(j).scale(C::new(-2.0 * f.a * s2, 0.0)));
        }
        acc
    };
    let mut out = poly.clone();
    let mut power = poly;
    for k in 1..=degree {
        power = times_e(&power).scale(C::new(1.0 / k as f64, 0.0));
        out = out.add(&power);
    }
    out
}

/// v ↦ f(e^{iφ}z₁, z₂, t), a compact element of U(1,1).
pub fn rotate_first_block(f: &TestFunction, phi: f64) -> TestFunction {
    let (c, s) = (phi.cos(), phi.sin());
    let g = [
        [c, -s, 0.0, 0.0, 0.0],
        [s, c, 0.0, 0.0, 0.0],
        [0.0, 0.0, 1.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 1.0, 0.0],
        [0.0, 0.0, 0.0, 0.0, 1.0],
    ];
    let mut out = TestFunction::zero(f.sig, f.a, f.b);
    for (m, coef) in &f.terms {
        let mut term = TestFunction::from_terms(f.sig, f.a, f.b, [(vec![0; 5], *coef)]);
        for (i, &e) in m.iter().enumerate() {
            for _ in 0..e {
                term = mul_linear(&term, &g[i]);
            }
        }
        out = out.add(&term);
    }
    out
}
