//! Left translates u ↦ f(x·u) pulled back into the test family.
//!
//! f(x·u) is a polynomial in u times exp(−a|u_v|² − b|u_ζ|²) times
//! exp(Q(u)) with Q quadratic; the last factor is replaced by its Taylor
//! polynomial of a chosen degree, which is the only approximation.

use crate::group::{im_b, GroupElement};
use num_complex::Complex64 as C;
use std::collections::BTreeMap;
use tengstrand::{Multi, TestFunction};

type Poly = BTreeMap<Multi, C>;

fn deg(m: &Multi) -> u32 {
    m.iter().sum()
}

fn add_into(p: &mut Poly, m: Multi, c: C) {
    if c == C::new(0.0, 0.0) {
        return;
    }
    *p.entry(m).or_insert(C::new(0.0, 0.0)) += c;
}

fn constant(dim: usize, c: C) -> Poly {
    let mut p = Poly::new();
    add_into(&mut p, vec![0; dim], c);
    p
}

fn add(p: &Poly, q: &Poly) -> Poly {
    let mut out = p.clone();
    for (m, c) in q {
        add_into(&mut out, m.clone(), *c);
    }
    out
}

fn scale(p: &Poly, s: C) -> Poly {
    p.iter().map(|(m, c)| (m.clone(), c * s)).collect()
}

fn mul(p: &Poly, q: &Poly, max_deg: u32) -> Poly {
    let mut out = Poly::new();
    for (m1, c1) in p {
        let d1 = deg(m1);
        for (m2, c2) in q {
            if d1 + deg(m2) > max_deg {
                continue;
            }
            let m: Multi = m1.iter().zip(m2).map(|(a, b)| a + b).collect();
            add_into(&mut out, m, c1 * c2);
        }
    }
    out
}

/// Affine form c0 + Σ c_j u_j as a polynomial.
fn affine(dim: usize, c0: f64, lin: &[(usize, f64)]) -> Poly {
    let mut p = constant(dim, C::new(c0, 0.0));
    for &(j, c) in lin {
        let mut m = vec![0; dim];
        m[j] = 1;
        add_into(&mut p, m, C::new(c, 0.0));
    }
    p
}

/// Representation of u ↦ f(x·u) in the family of `f`, with the Gaussian
/// cross factor expanded to total degree `degree`.
pub fn left_translate_taylor(f: &TestFunction, x: &GroupElement, degree: u32) -> TestFunction {
    let sig = f.sig;
    let dim = sig.dim();
    let dv = sig.d_real();
    let cdim = sig.center_dim();

    // u_ζ + w(u), w = ζ − ½ Im B(v, u_v); linear part of Im B by columns
    let mut ib_cols = vec![vec![0.0; cdim]; dv];
    for (j, col) in ib_cols.iter_mut().enumerate() {
        let mut e = vec![0.0; dv];
        e[j] = 1.0;
        *col = im_b(&sig, &x.v, &e);
    }
    let w: Vec<Poly> = (0..cdim)
        .map(|m| {
            let lin: Vec<(usize, f64)> = (0..dv).map(|j| (j, -0.5 * ib_cols[j][m])).collect();
            affine(dim, x.zeta[m], &lin)
        })
        .collect();
    let coord: Vec<Poly> = (0..dim)
        .map(|i| {
            if i < dv {
                affine(dim, x.v[i], &[(i, 1.0)])
            } else {
                let mut p = w[i - dv].clone();
                add_into(&mut p, unit(dim, i), C::new(1.0, 0.0));
                p
            }
        })
        .collect();

    // polynomial part P(x·u), exact
    let big = u32::MAX;
    let mut ppoly = Poly::new();
    let mut pow_cache: BTreeMap<(usize, u32), Poly> = BTreeMap::new();
    for (m, c) in &f.terms {
        let mut term = constant(dim, *c);
        for (i, &e) in m.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let pw = pow_cache
                .entry((i, e))
                .or_insert_with(|| {
                    let mut acc = constant(dim, C::new(1.0, 0.0));
                    for _ in 0..e {
                        acc = mul(&acc, &coord[i], big);
                    }
                    acc
                })
                .clone();
            term = mul(&term, &pw, big);
        }
        ppoly = add(&ppoly, &term);
    }

    // Q(u) − Q(0) = −a(2 v·u_v) − b(|w|² − |ζ|² + 2 u_ζ·w)
    let mut e = Poly::new();
    for j in 0..dv {
        add_into(&mut e, unit(dim, j), C::new(-2.0 * f.a * x.v[j], 0.0));
    }
    for (m, wm) in w.iter().enumerate() {
        let w2 = mul(wm, wm, 2);
        e = add(&e, &scale(&w2, C::new(-f.b, 0.0)));
        let uw = mul(&affine(dim, 0.0, &[(dv + m, 1.0)]), wm, 2);
        e = add(&e, &scale(&uw, C::new(-2.0 * f.b, 0.0)));
    }
    let zero = vec![0u32; dim];
    e.remove(&zero);
    let q0 = -f.a * x.v.iter().map(|t| t * t).sum::<f64>() - f.b * x.zeta.iter().map(|t| t * t).sum::<f64>();

    let mut series = constant(dim, C::new(1.0, 0.0));
    let mut ek = constant(dim, C::new(1.0, 0.0));
    for k in 1..=degree {
        ek = scale(&mul(&ek, &e, degree), C::new(1.0 / k as f64, 0.0));
        if ek.is_empty() {
            break;
        }
        series = add(&series, &ek);
    }
    let pdeg = ppoly.keys().map(deg).max().unwrap_or(0);
    let full = mul(&ppoly, &series, pdeg + degree);
    let s = C::new(q0.exp(), 0.0);
    TestFunction::from_terms(sig, f.a, f.b, full.into_iter().map(|(m, c)| (m, c * s)))
}

fn unit(dim: usize, i: usize) -> Multi {
    let mut m = vec![0; dim];
    m[i] = 1;
    m
}
