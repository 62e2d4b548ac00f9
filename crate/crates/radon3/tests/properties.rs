use proptest::prelude::*;
use radon3::*;

fn unit(v: [f64; 3]) -> [f64; 3] {
    let r = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
    [v[0] / r, v[1] / r, v[2] / r]
}

fn dir() -> impl Strategy<Value = [f64; 3]> {
    prop::array::uniform3(-1.0f64..1.0).prop_filter("nonzero", |v| v.iter().map(|x| x * x).sum::<f64>() > 0.05).prop_map(unit)
}

fn poly_gauss() -> impl Strategy<Value = PolyGauss> {
    (0.5f64..2.0, prop::collection::vec((prop::array::uniform3(0u32..3), -1.0f64..1.0), 1..5)).prop_map(|(a, terms)| {
        let mut g = PolyGauss::zero(a);
        for (b, c) in terms {
            g.add_term(b, c);
        }
        g
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn basis_independence(g in poly_gauss(), xi in dir(), t in -2.0f64..2.0, angles in prop::array::uniform5(0.0f64..6.283)) {
        let f: R3Function = g.into();
        let (e1, e2) = completion_basis(&xi);
        let grid = RadonGrid::default();
        let base = radon_with_basis(&f, t, &xi, &e1, &e2, &grid).unwrap();
        for th in angles {
            let (s, c) = th.sin_cos();
            let r1 = [c * e1[0] + s * e2[0], c * e1[1] + s * e2[1], c * e1[2] + s * e2[2]];
            let r2 = [-s * e1[0] + c * e2[0], -s * e1[1] + c * e2[1], -s * e1[2] + c * e2[2]];
            let v = radon_with_basis(&f, t, &xi, &r1, &r2, &grid).unwrap();
            prop_assert!((v - base).abs() <= 1e-10, "{v} vs {base}");
        }
    }

    #[test]
    fn evenness(g in poly_gauss(), xi in dir(), t in -2.0f64..2.0) {
        let f: R3Function = g.into();
        let a = radon(&f, t, &xi).unwrap();
        let b = radon(&f, -t, &[-xi[0], -xi[1], -xi[2]]).unwrap();
        prop_assert!((a - b).abs() <= 1e-13 * a.abs().max(1.0));
    }

    #[test]
    fn mass_consistency(g in poly_gauss(), xi in dir()) {
        let m = radon_mass(&g, &xi, &RadonGrid::default()).unwrap();
        let exact = g.integral();
        let scale = g.terms.values().map(|c| c.abs()).sum::<f64>() * g.a.powf(-1.5);
        prop_assert!((m - exact).abs() <= 1e-8 * exact.abs().max(scale), "{m} vs {exact}");
    }

    #[test]
    fn fractional_laplacian_order_two(g in poly_gauss(), x in prop::array::uniform3(-1.0f64..1.0)) {
        let v = fractional_laplacian_at(&g.clone().into(), 2.0, &x).unwrap();
        let lap = g.laplacian().eval(&x);
        prop_assert!((v + lap).abs() <= 1e-8 * lap.abs().max(1.0), "{v} vs {}", -lap);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(3))]

    #[test]
    fn duality(a in 0.6f64..1.6, c in 0.5f64..2.0) {
        let grid = RadonGrid { sphere_per_angle: 16, ..Default::default() };
        let d = radon3::duality(&PolyGauss::gaussian(a), |t, _| (-c * t * t).exp(), &grid).unwrap();
        prop_assert!(d.gap() <= 1e-6, "{d:?}");
    }
}
