use fsol_quat::*;
use num_complex::Complex64 as C;
use proptest::prelude::*;
use radon3::RadonGrid;
use std::collections::BTreeMap;
use tengstrand::{Signature, TestFunction};

fn resolved() -> QuatKernelConfig {
    QuatKernelConfig::new(2, C0Variant::ExponentMinus).unwrap().with_resolved(C0Variant::ExponentMinus)
}

/// Random real test function on N(1,1,ℍ) with one τ-odd v-term so Φ₁₁ ≠ 0.
fn test_fn(a: f64, b: f64) -> impl Strategy<Value = TestFunction> {
    prop::collection::vec((0u32..3, 0u32..3, prop::array::uniform3(0u32..3), -1.0f64..1.0), 1..4).prop_map(move |terms| {
        let sig = Signature::quat(1, 1);
        let mut f = TestFunction::zero(sig, a, b);
        let mut lead = vec![0; sig.dim()];
        lead[0] = 2;
        f.add_term(lead, C::new(1.0, 0.0));
        for (e0, e5, z, c) in terms {
            let mut m = vec![0; sig.dim()];
            m[0] = e0;
            m[5] = e5;
            m[8..].copy_from_slice(&z);
            f.add_term(m, C::new(c, 0.0));
        }
        f
    })
}

fn rotation(axis: [f64; 3], angle: f64) -> [[f64; 3]; 3] {
    let r = (axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]).sqrt();
    let [x, y, z] = [axis[0] / r, axis[1] / r, axis[2] / r];
    let (s, c) = angle.sin_cos();
    let t = 1.0 - c;
    [
        [t * x * x + c, t * x * y - s * z, t * x * z + s * y],
        [t * x * y + s * z, t * y * y + c, t * y * z - s * x],
        [t * x * z - s * y, t * y * z + s * x, t * z * z + c],
    ]
}

/// f(v, Rz), expanded back into monomials.
fn rotate_center(f: &TestFunction, rot: &[[f64; 3]; 3]) -> TestFunction {
    let dv = f.sig.d_real();
    let mut out = TestFunction::zero(f.sig, f.a, f.b);
    for (m, c) in &f.terms {
        let mut poly: BTreeMap<[u32; 3], f64> = [([0, 0, 0], 1.0)].into_iter().collect();
        for i in 0..3 {
            for _ in 0..m[dv + i] {
                let mut next = BTreeMap::new();
                for (e, v) in &poly {
                    for j in 0..3 {
                        let mut e2 = *e;
                        e2[j] += 1;
                        *next.entry(e2).or_insert(0.0) += v * rot[i][j];
                    }
                }
                poly = next;
            }
        }
        for (e, v) in poly {
            let mut mm = m[..dv].to_vec();
            mm.extend_from_slice(&e);
            out.add_term(mm, c * v);
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn radon_of_phi_matches_closed_form(tau in 0.3f64..2.5, neg in any::<bool>(), t in -2.0f64..2.0) {
        let tau = if neg { -tau } else { tau };
        let c0 = c0_closed(2, C0Variant::ExponentMinus);
        let plane = radon_phi(2, c0, tau, t, &[0.6, 0.0, 0.8], &RadonGrid::default()).unwrap();
        let closed = varphi_closed(2, c0, tau, t);
        prop_assert!((plane - closed).abs() <= 1e-6 * closed.abs(), "{plane} vs {closed}");
    }

    #[test]
    fn literal_pairing_is_linear(f in test_fn(1.0, 1.2), g in test_fn(1.0, 1.2), s in -2.0f64..2.0, u in -2.0f64..2.0) {
        let cfg = resolved();
        let grid = Phi11Grid::default();
        let comb = f.scale(C::new(s, 0.0)).add(&g.scale(C::new(u, 0.0)));
        let lhs = phi_quat_literal(&comb, &cfg, &grid).unwrap().value;
        let rhs = phi_quat_literal(&f, &cfg, &grid).unwrap().value * s + phi_quat_literal(&g, &cfg, &grid).unwrap().value * u;
        let scale = lhs.norm().max(rhs.norm()).max(1.0);
        prop_assert!((lhs - rhs).norm() <= 1e-10 * scale, "{lhs} vs {rhs}");
    }

    #[test]
    fn phi11_invariant_under_center_rotation(f in test_fn(1.3, 0.9), axis in prop::array::uniform3(-1.0f64..1.0), angle in 0.0f64..6.28) {
        prop_assume!(axis.iter().map(|x| x * x).sum::<f64>() > 0.05);
        let cfg = resolved();
        let grid = Phi11Grid::default();
        let rf = rotate_center(&f, &rotation(axis, angle));
        let a = phi11_quat_pair(&f, &cfg, &grid).unwrap().value;
        let b = phi11_quat_pair(&rf, &cfg, &grid).unwrap().value;
        prop_assert!((a - b).norm() <= 1e-6 * a.norm().max(1.0), "{a} vs {b}");
    }

    #[test]
    fn radon_slice_is_linear(f in test_fn(1.0, 1.0), g in test_fn(1.0, 1.0), s in -2.0f64..2.0) {
        let xi = [0.0, 0.6, -0.8];
        let comb = f.add(&g.scale(C::new(s, 0.0)));
        let lhs = radon_slice(&comb, &xi).unwrap();
        let rhs = radon_slice(&f, &xi).unwrap().add(&radon_slice(&g, &xi).unwrap().scale(C::new(s, 0.0)));
        for (m, c) in lhs.sub(&rhs).terms {
            prop_assert!(c.norm() <= 1e-12, "{m:?}: {c}");
        }
    }
}
