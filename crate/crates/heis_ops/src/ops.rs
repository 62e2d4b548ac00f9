//! Symbolic application of L, L₀, L₁, T, U and L_α to the test family,
//! plus a finite-difference check of left invariance.

use crate::algebra::im_table;
use crate::error::HeisError;
use crate::group::{group_mul, GroupElement};
use num_complex::Complex64 as C;
use std::fmt;
use tengstrand::{Field, Signature, TestFunction};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum OperatorId {
    /// Σ_r ε_r Σ_l (X_r^l)², both fields.
    L,
    /// Complex only: Σ ε_r Δ_{v_r} + ¼ (Σ ε_r |v_r|²) ∂_t².
    L0,
    /// Complex only: ∂_t Σ_r (x_r ∂_{y_r} − y_r ∂_{x_r}).
    L1,
    /// Complex only: ∂_t.
    T,
    /// Quaternionic only: Δ_z on the center.
    UQuat,
    /// Complex only: L + iα T.
    LAlpha(C),
}

impl fmt::Display for OperatorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OperatorId::L => write!(f, "L"),
            OperatorId::L0 => write!(f, "L0"),
            OperatorId::L1 => write!(f, "L1"),
            OperatorId::T => write!(f, "T"),
            OperatorId::UQuat => write!(f, "U_quat"),
            OperatorId::LAlpha(a) => write!(f, "L_alpha({a})"),
        }
    }
}

impl OperatorId {
    fn check_field(&self, sig: &Signature) -> Result<(), HeisError> {
        let ok = match self {
            OperatorId::L => true,
            OperatorId::UQuat => sig.field == Field::Quaternionic,
            _ => sig.field == Field::Complex,
        };
        if ok {
            Ok(())
        } else {
            Err(HeisError::FieldMismatch { op: self.to_string(), field: sig.field.to_string() })
        }
    }
}

/// f^∨(x) = f(x⁻¹) = f(−v, −ζ).
pub fn involution(f: &TestFunction) -> TestFunction {
    f.reflect()
}

/// Coefficient vectors of the left-invariant fields: X_r^l = ∂_{x_{rl}} − ½ ε_r Σ_m c_m ∂_{z_m}
/// with c_m = Σ_{l′} table[l][l′][m] x_{rl′}. Returned as (l′, m, coefficient) triples.
fn field_terms(sig: &Signature, l: usize) -> Vec<(usize, usize, f64)> {
    let tab = im_table(sig.field);
    let mut out = Vec::new();
    for (lp, row) in tab[l].iter().enumerate() {
        for (m, &c) in row.iter().enumerate() {
            if c != 0.0 {
                out.push((lp, m, c));
            }
        }
    }
    out
}

fn apply_x(f: &TestFunction, r: usize, l: usize) -> TestFunction {
    let sig = f.sig;
    let fd = sig.field.dim();
    let mut out = f.derivative(r * fd + l);
    let half_eps = -0.5 * sig.eps(r);
    for (lp, m, c) in field_terms(&sig, l) {
        let term = f.derivative(f.center_index(m)).mul_coord(r * fd + lp);
        out = out.add(&term.scale(C::new(half_eps * c, 0.0)));
    }
    out
}

fn apply_l(f: &TestFunction) -> TestFunction {
    let sig = f.sig;
    let mut out = TestFunction::zero(sig, f.a, f.b);
    for r in 0..sig.n() {
        for l in 0..sig.field.dim() {
            let xx = apply_x(&apply_x(f, r, l), r, l);
            out = out.add(&xx.scale(C::new(sig.eps(r), 0.0)));
        }
    }
    out
}

fn apply_l0(f: &TestFunction) -> TestFunction {
    let sig = f.sig;
    let t = f.center_index(0);
    let ftt = f.derivative(t).derivative(t);
    let mut out = TestFunction::zero(sig, f.a, f.b);
    for r in 0..sig.n() {
        let e = C::new(sig.eps(r), 0.0);
        for i in [2 * r, 2 * r + 1] {
            out = out.add(&f.derivative(i).derivative(i).scale(e));
            out = out.add(&ftt.mul_coord(i).mul_coord(i).scale(e * 0.25));
        }
    }
    out
}

fn apply_l1(f: &TestFunction) -> TestFunction {
    let sig = f.sig;
    let ft = f.derivative(f.center_index(0));
    let mut out = TestFunction::zero(sig, f.a, f.b);
    for r in 0..sig.n() {
        let (x, y) = (2 * r, 2 * r + 1);
        out = out.add(&ft.derivative(y).mul_coord(x));
        out = out.sub(&ft.derivative(x).mul_coord(y));
    }
    out
}

pub fn apply_operator(op: OperatorId, f: &TestFunction) -> Result<TestFunction, HeisError> {
    op.check_field(&f.sig)?;
    Ok(match op {
        OperatorId::L => apply_l(f),
        OperatorId::L0 => apply_l0(f),
        OperatorId::L1 => apply_l1(f),
        OperatorId::T => f.derivative(f.center_index(0)),
        OperatorId::UQuat => {
            let mut out = TestFunction::zero(f.sig, f.a, f.b);
            for m in 0..f.sig.center_dim() {
                let i = f.center_index(m);
                out = out.add(&f.derivative(i).derivative(i));
            }
            out
        }
        OperatorId::LAlpha(alpha) => {
            let tf = f.derivative(f.center_index(0));
            apply_l(f).add(&tf.scale(C::new(0.0, 1.0) * alpha))
        }
    })
}

// ---- finite-difference oracle -------------------------------------------

const FD_H0: f64 = 0.05;
const FD_LEVELS: usize = 5;

fn richardson4(vals: Vec<C>) -> C {
    // vals[k] computed at h0 / 2^k, error expansion in h²
    let mut t = vals;
    let n = t.len();
    for k in 1..n {
        let fac = 4f64.powi(k as i32);
        for i in (k..n).rev() {
            t[i] = (t[i] * fac - t[i - 1]) / (fac - 1.0);
        }
    }
    t[n - 1]
}

fn d1<F: Fn(&[f64]) -> C>(f: &F, x: &[f64], i: usize) -> C {
    let vals = (0..FD_LEVELS)
        .map(|k| {
            let h = FD_H0 * 0.5f64.powi(k as i32);
            let mut p = x.to_vec();
            let mut m = x.to_vec();
            p[i] += h;
            m[i] -= h;
            (f(&p) - f(&m)) / (2.0 * h)
        })
        .collect();
    richardson4(vals)
}

fn d2<F: Fn(&[f64]) -> C>(f: &F, x: &[f64], i: usize, j: usize) -> C {
    let vals = (0..FD_LEVELS)
        .map(|k| {
            let h = FD_H0 * 0.5f64.powi(k as i32);
            if i == j {
                let mut p = x.to_vec();
                let mut m = x.to_vec();
                p[i] += h;
                m[i] -= h;
                (f(&p) - f(x) * 2.0 + f(&m)) / (h * h)
            } else {
                let at = |si: f64, sj: f64| {
                    let mut y = x.to_vec();
                    y[i] += si * h;
                    y[j] += sj * h;
                    f(&y)
                };
                (at(1.0, 1.0) - at(1.0, -1.0) - at(-1.0, 1.0) + at(-1.0, -1.0)) / (4.0 * h * h)
            }
        })
        .collect();
    richardson4(vals)
}

/// The coordinate expression of `op` applied to an arbitrary function by
/// central differences.
fn apply_fd<F: Fn(&[f64]) -> C>(op: OperatorId, sig: &Signature, f: &F, x: &[f64]) -> C {
    let fd = sig.field.dim();
    let dv = sig.d_real();
    match op {
        OperatorId::T => d1(f, x, dv),
        OperatorId::UQuat => (0..sig.center_dim()).map(|m| d2(f, x, dv + m, dv + m)).sum(),
        OperatorId::LAlpha(alpha) => {
            apply_fd(OperatorId::L, sig, f, x) + C::new(0.0, 1.0) * alpha * d1(f, x, dv)
        }
        OperatorId::L0 => {
            let mut acc = C::new(0.0, 0.0);
            for r in 0..sig.n() {
                let e = sig.eps(r);
                for i in [2 * r, 2 * r + 1] {
                    acc += d2(f, x, i, i) * e;
                    acc += d2(f, x, dv, dv) * (0.25 * e * x[i] * x[i]);
                }
            }
            acc
        }
        OperatorId::L1 => {
            let mut acc = C::new(0.0, 0.0);
            for r in 0..sig.n() {
                let (xi, yi) = (2 * r, 2 * r + 1);
                acc += d2(f, x, dv, yi) * x[xi] - d2(f, x, dv, xi) * x[yi];
            }
            acc
        }
        OperatorId::L => {
            // ε_r X² = ε_r ∂² − (c·∇_z)∂ + ¼ ε_r (c·∇_z)²
            let mut acc = C::new(0.0, 0.0);
            for r in 0..sig.n() {
                let e = sig.eps(r);
                for l in 0..fd {
                    let i = r * fd + l;
                    let mut c = vec![0.0; sig.center_dim()];
                    for (lp, m, w) in field_terms(sig, l) {
                        c[m] += w * x[r * fd + lp];
                    }
                    acc += d2(f, x, i, i) * e;
                    for (m, cm) in c.iter().enumerate() {
                        if *cm == 0.0 {
                            continue;
                        }
                        acc -= d2(f, x, dv + m, i) * *cm;
                        for (mp, cmp) in c.iter().enumerate() {
                            if *cmp != 0.0 {
                                acc += d2(f, x, dv + m, dv + mp) * (0.25 * e * cm * cmp);
                            }
                        }
                    }
                }
            }
            acc
        }
    }
}

/// |(op f)(g·x) − op(f∘ℓ_g)(x)|, the right side by central differences of
/// the coordinate expression applied to y ↦ f(g·y).
pub fn left_invariant_check(
    op: OperatorId,
    f: &TestFunction,
    g: &GroupElement,
    x: &GroupElement,
) -> Result<f64, HeisError> {
    let sig = f.sig;
    let opf = apply_operator(op, f)?;
    let gx = group_mul(g, x, &sig)?;
    let lhs = opf.eval(&gx.coords());
    let translated = |y: &[f64]| {
        let ye = GroupElement::from_coords(&sig, y);
        let gy = group_mul(g, &ye, &sig).expect("dimensions checked above");
        f.eval(&gy.coords())
    };
    let rhs = apply_fd(op, &sig, &translated, &x.coords());
    Ok((lhs - rhs).norm())
}

/// Coordinate-formula application by finite differences, exposed for tests.
pub fn apply_operator_fd<F: Fn(&[f64]) -> C>(op: OperatorId, sig: &Signature, f: F, x: &[f64]) -> Result<C, HeisError> {
    op.check_field(sig)?;
    Ok(apply_fd(op, sig, &f, x))
}
