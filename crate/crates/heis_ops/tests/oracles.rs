use heis_ops::ops::apply_operator_fd;
use heis_ops::*;
use num_complex::Complex64 as C;
use tengstrand::{Signature, TestFunction};

fn c(x: f64) -> C {
    C::new(x, 0.0)
}

fn sample(sig: Signature) -> TestFunction {
    let mut f = TestFunction::gaussian(sig, 0.9, 1.1);
    let dim = sig.dim();
    let mut m = vec![0u32; dim];
    m[0] = 1;
    m[dim - 1] = 1;
    f.add_term(m, C::new(0.4, -0.3));
    let mut m = vec![0u32; dim];
    m[1] = 2;
    m[sig.d_real() - 1] = 1;
    f.add_term(m, C::new(-0.7, 0.2));
    f
}

#[test]
fn group_law_examples() {
    let s = Signature::complex(1, 1);
    let x = GroupElement::new(&s, vec![0.3, -1.2, 0.5, 2.0], vec![0.7]).unwrap();
    let e = GroupElement::identity(&s);
    assert_eq!(group_mul(&x, &e, &s).unwrap(), x);
    let xi = group_mul(&x, &x.inverse(), &s).unwrap();
    assert!(xi.coords().iter().all(|t| t.abs() < 1e-15));

    // v = (1, 0), v′ = (i, 0): Im B = Im(1·(−i)) = −1, so ζ = 1/2
    let a = GroupElement::new(&s, vec![1.0, 0.0, 0.0, 0.0], vec![0.0]).unwrap();
    let b = GroupElement::new(&s, vec![0.0, 1.0, 0.0, 0.0], vec![0.0]).unwrap();
    let ab = group_mul(&a, &b, &s).unwrap();
    assert_eq!(ab.v, vec![1.0, 1.0, 0.0, 0.0]);
    assert_eq!(ab.zeta, vec![0.5]);

    let q = Signature::quat(1, 1);
    assert!(matches!(group_mul(&x, &x, &q), Err(HeisError::SignatureMismatch(_))));
}

#[test]
fn involution_examples() {
    let s = Signature::complex(1, 1);
    let g = TestFunction::gaussian(s, 1.0, 1.0);
    assert_eq!(involution(&g), g);
    let f = TestFunction::monomial(s, 1.0, 1.0, vec![1, 0, 0, 0, 0], c(1.0));
    assert_eq!(involution(&f), f.scale(c(-1.0)));
    let h = sample(s);
    assert_eq!(involution(&involution(&h)), h);
}

#[test]
fn operator_examples() {
    let s = Signature::complex(1, 1);
    let g = TestFunction::gaussian(s, 1.0, 1.0);

    // T e^{−|v|²−t²} = −2t e^{−|v|²−t²}
    let tg = apply_operator(OperatorId::T, &g).unwrap();
    assert_eq!(tg, TestFunction::monomial(s, 1.0, 1.0, vec![0, 0, 0, 0, 1], c(-2.0)));

    // L₁ kills functions radial in each slot
    let mut radial = g.clone();
    for m in [[2, 0, 2, 0, 1], [2, 0, 0, 2, 1], [0, 2, 2, 0, 1], [0, 2, 0, 2, 1]] {
        radial.add_term(m.to_vec(), c(0.5));
    }
    radial.add_term(vec![0, 0, 4, 0, 0], c(1.0));
    radial.add_term(vec![0, 0, 2, 2, 0], c(2.0));
    radial.add_term(vec![0, 0, 0, 4, 0], c(1.0));
    assert!(apply_operator(OperatorId::L1, &radial).unwrap().is_zero());

    // L₀ e^{−|v|²−t²}: the v-Laplacian part plus ¼ τ_q(v)(4t²−2)e^{...}
    let l0 = apply_operator(OperatorId::L0, &g).unwrap();
    for x in [[0.3f64, -0.2, 1.1, 0.4, 0.8], [1.0, 0.0, 0.0, 0.5, -0.3]] {
        let (x1, y1, x2, y2, t) = (x[0], x[1], x[2], x[3], x[4]);
        let gauss = (-(x1 * x1 + y1 * y1 + x2 * x2 + y2 * y2) - t * t).exp();
        let lap1 = (4.0 * (x1 * x1 + y1 * y1) - 4.0) * gauss;
        let lap2 = (4.0 * (x2 * x2 + y2 * y2) - 4.0) * gauss;
        let tq = x1 * x1 + y1 * y1 - x2 * x2 - y2 * y2;
        let want = lap1 - lap2 + 0.25 * tq * (4.0 * t * t - 2.0) * gauss;
        assert!((l0.eval(&x) - c(want)).norm() < 1e-14);
    }

    let q = Signature::quat(1, 1);
    let gq = TestFunction::gaussian(q, 1.0, 1.0);
    assert!(matches!(apply_operator(OperatorId::T, &gq), Err(HeisError::FieldMismatch { .. })));
    assert!(matches!(apply_operator(OperatorId::UQuat, &g), Err(HeisError::FieldMismatch { .. })));
    assert!(apply_operator(OperatorId::UQuat, &gq).is_ok());
}

#[test]
fn symbolic_operators_match_finite_differences() {
    for s in [Signature::complex(1, 1), Signature::complex(2, 1), Signature::quat(1, 1)] {
        let f = sample(s);
        let ops: Vec<OperatorId> = match s.field {
            tengstrand::Field::Complex => vec![
                OperatorId::L,
                OperatorId::L0,
                OperatorId::L1,
                OperatorId::T,
                OperatorId::LAlpha(C::new(0.3, -0.8)),
            ],
            tengstrand::Field::Quaternionic => vec![OperatorId::L, OperatorId::UQuat],
        };
        let x: Vec<f64> = (0..s.dim()).map(|i| 0.3 * ((i as f64) * 1.7).sin()).collect();
        for op in ops {
            let sym = apply_operator(op, &f).unwrap().eval(&x);
            let fd = apply_operator_fd(op, &s, |y| f.eval(y), &x).unwrap();
            assert!((sym - fd).norm() < 1e-8, "{s} {op}: {sym} vs {fd}");
        }
    }
}

#[test]
fn left_invariance() {
    for s in [Signature::complex(1, 1), Signature::complex(1, 2), Signature::quat(1, 1)] {
        let f = TestFunction::gaussian(s, 0.8, 0.6);
        let pick = |k: f64| -> GroupElement {
            let x: Vec<f64> = (0..s.dim()).map(|i| 0.6 * ((i as f64 + k) * 2.3).cos()).collect();
            GroupElement::from_coords(&s, &x)
        };
        let e = GroupElement::identity(&s);
        let (g, x) = (pick(0.4), pick(1.9));
        assert!(left_invariant_check(OperatorId::L, &f, &e, &x).unwrap() < 1e-8);
        assert!(left_invariant_check(OperatorId::L, &f, &g, &x).unwrap() < 1e-8);
        if s.field == tengstrand::Field::Complex {
            assert!(left_invariant_check(OperatorId::T, &f, &g, &x).unwrap() < 1e-10);
            assert!(left_invariant_check(OperatorId::LAlpha(c(0.7)), &f, &g, &x).unwrap() < 1e-8);
        } else {
            assert!(left_invariant_check(OperatorId::UQuat, &f, &g, &x).unwrap() < 1e-8);
        }
    }
}

#[test]
fn left_translate_converges_with_degree() {
    let s = Signature::complex(1, 1);
    let f = sample(s);
    let x = GroupElement::new(&s, vec![0.2, -0.1, 0.15, 0.05], vec![0.1]).unwrap();
    let u = [0.3, 0.2, -0.4, 0.1, -0.2];
    let ue = GroupElement::from_coords(&s, &u);
    let want = f.eval(&group_mul(&x, &ue, &s).unwrap().coords());
    let mut prev = f64::INFINITY;
    for d in [2, 4, 6, 8] {
        let h = left_translate_taylor(&f, &x, d);
        let err = (h.eval(&u) - want).norm();
        assert!(err < prev);
        prev = err;
    }
    assert!(prev < 1e-7, "{prev}");
    // the identity translate is exact at any degree
    let h0 = left_translate_taylor(&f, &GroupElement::identity(&s), 0);
    assert!((h0.eval(&u) - f.eval(&u)).norm() < 1e-15);
}
