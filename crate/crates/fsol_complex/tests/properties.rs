mod common;

use common::{hyperbolic_compose, rel, rotate_first_block, skewed_fn};
use fsol_complex::*;
use num_complex::Complex64 as C;
use proptest::prelude::*;
use tengstrand::{Signature, TestFunction};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn c_alpha_is_even(n in 2usize..7, re in -1.9f64..1.9, im in -2.0f64..2.0) {
        let a = C::new(re, im);
        let x = c_alpha(n, a).unwrap();
        let y = c_alpha(n, -a).unwrap();
        prop_assert!((x - y).norm() <= 1e-12 * x.norm().max(1.0));
    }

    #[test]
    fn cj_signs_swap_with_alpha(n in 2usize..6, j in 1usize..5, re in -1.5f64..1.5, im in -1.0f64..1.0) {
        let a = C::new(re, im);
        let m = cj_pm(n, a, j, Sign::Minus).unwrap();
        let p = cj_pm(n, -a, j, Sign::Plus).unwrap();
        prop_assert!((m - p).norm() <= 1e-14 * m.norm().max(1.0));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(4))]

    #[test]
    fn pairing_is_linear(c1 in -2.0f64..2.0, c2 in -2.0f64..2.0, ci in -1.0f64..1.0) {
        let sig = Signature::complex(1, 1);
        let f = TestFunction::gaussian(sig, 1.0, 1.0);
        let g = skewed_fn();
        let (a, b) = (C::new(c1, ci), C::new(c2, 0.0));
        let al = AlphaParam::new(C::new(0.7, 0.0), sig).unwrap();
        let grid = PhiGrid::level(2);
        let lhs = phi_pair_with(&f.scale(a).add(&g.scale(b)), &al, &grid).unwrap().result.value;
        let rhs = phi_pair_with(&f, &al, &grid).unwrap().result.value * a
            + phi_pair_with(&g, &al, &grid).unwrap().result.value * b;
        prop_assert!((lhs - rhs).norm() <= 1e-10 * rhs.norm().max(1.0), "{} vs {}", lhs, rhs);
    }

    #[test]
    fn fundamental_identity_off_resonance(re in -1.8f64..1.8, im in -0.8f64..0.8) {
        let sig = Signature::complex(1, 1);
        // keep clear of the resonances at even integers
        prop_assume!((re - re.round()).abs() > 0.05 || re.round() as i64 % 2 != 0 || im.abs() > 0.05);
        let al = AlphaParam::new(C::new(re, im), sig).unwrap();
        let r = verify_fundamental_report(&skewed_fn(), &al, &PhiGrid::level(4)).unwrap();
        prop_assert!(r.residual < 1e-9, "alpha = {re}+{im}i: {}", r.residual);
    }

    #[test]
    fn pairing_is_invariant_under_u11(s in -0.06f64..0.06, phi in 0.0f64..6.2) {
        let f = skewed_fn();
        let al = AlphaParam::new(C::new(0.3, 0.2), f.sig).unwrap();
        let base = phi_pair(&f, &al).unwrap().value;
        let h = phi_pair(&hyperbolic_compose(&f, s, 14), &al).unwrap().value;
        let r = phi_pair(&rotate_first_block(&f, phi), &al).unwrap().value;
        prop_assert!(rel(h, base) <= 1e-6, "{} vs {}", h, base);
        prop_assert!(rel(r, base) <= 1e-10, "{} vs {}", r, base);
    }
}
