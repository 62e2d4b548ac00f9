use num_complex::Complex64 as C;
use proptest::prelude::*;
use special_fn::*;

proptest! {
    #[test]
    fn gamma_functional_equation(re in 0.1f64..5.0, im in -3.0f64..3.0) {
        let z = C::new(re, im);
        let lhs = gamma(z + 1.0).unwrap();
        let rhs = z * gamma(z).unwrap();
        prop_assert!((lhs - rhs).norm() <= 1e-11 * lhs.norm());
    }

    #[test]
    fn beta_is_symmetric(a in 0.1f64..4.0, ai in -2.0f64..2.0, b in 0.1f64..4.0, bi in -2.0f64..2.0) {
        let x = C::new(a, ai);
        let y = C::new(b, bi);
        let u = beta(x, y).unwrap();
        let v = beta(y, x).unwrap();
        prop_assert!((u - v).norm() <= 1e-12 * u.norm().max(1e-300));
    }

    #[test]
    fn laguerre_recurrence_holds(k in 1usize..200, m in 0usize..=10, t in 0.0f64..50.0) {
        let tab = laguerre_table(k + 1, m, t);
        let kf = k as f64;
        let mf = m as f64;
        let lhs = (kf + 1.0) * tab[k + 1];
        let rhs = (2.0 * kf + mf + 1.0 - t) * tab[k] - (kf + mf) * tab[k - 1];
        let scale = ((kf + 1.0) * tab[k + 1]).abs()
            + ((2.0 * kf + mf + 1.0 - t) * tab[k]).abs()
            + ((kf + mf) * tab[k - 1]).abs();
        prop_assert!((lhs - rhs).abs() <= 8.0 * f64::EPSILON * scale.max(1.0));
    }

    #[test]
    fn generating_residual_decreases_in_k(n in 1usize..4, t in 0.0f64..10.0, re in -0.5f64..0.5, im in -0.3f64..0.3) {
        let z = C::new(re, im);
        prop_assume!(z.norm() <= 0.5);
        let mut prev = f64::INFINITY;
        for kk in (0..=120).step_by(10) {
            let r = laguerre_generating_residual(n, t, z, kk).residual;
            prop_assert!(r <= prev.max(1e-12) * (1.0 + 1e-9) + 1e-13);
            prev = r;
        }
    }
}
