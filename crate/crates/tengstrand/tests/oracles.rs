use num_complex::Complex64 as C;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Gamma, StandardNormal};
use std::f64::consts::PI;
use tengstrand::transform::{kappa_closed_form, n_transform_fn, sphere_moment_quad};
use tengstrand::*;

fn c(x: f64) -> C {
    C::new(x, 0.0)
}

fn close(a: C, b: C, tol: f64) -> bool {
    (a - b).norm() <= tol * b.norm().max(1.0)
}

#[test]
fn bipolar_examples() {
    let s = Signature::complex(1, 1);
    let b = bipolar_decompose(&[1.0, 0.0, 0.0, 0.0], &s).unwrap();
    assert_eq!((b.rho, b.tau), (1.0, 1.0));
    assert!(b.degenerate() && b.omega_v.is_none());

    let b = bipolar_decompose(&[1.0, 0.0, 1.0, 0.0], &s).unwrap();
    assert_eq!((b.rho, b.tau), (2.0, 0.0));
    assert_eq!(b.omega_u.as_deref(), Some(&[1.0, 0.0][..]));
    assert_eq!(b.omega_v.as_deref(), Some(&[1.0, 0.0][..]));

    let v = [3.0, 4.0, 0.0, 5.0];
    let b = bipolar_decompose(&v, &s).unwrap();
    assert_eq!((b.rho, b.tau), (50.0, 0.0));
    let ou = b.omega_u.clone().unwrap();
    assert!((ou[0] - 0.6).abs() < 1e-15 && (ou[1] - 0.8).abs() < 1e-15);
    assert_eq!(b.omega_v.as_deref(), Some(&[0.0, 1.0][..]));
    let back = b.reconstruct(&s);
    for (x, y) in back.iter().zip(v) {
        assert!((x - y).abs() <= 1e-12 * 50f64.sqrt());
    }
    assert!(bipolar_decompose(&[0.0; 4], &s).is_err());
}

#[test]
fn sphere_moments_match_closed_form() {
    for g in [vec![2u32, 0, 0, 0], vec![2, 2, 0, 4], vec![0, 0, 0, 0, 2, 2, 0, 0], vec![1, 2, 0]] {
        let q = sphere_moment_quad(&g, 32);
        let e = special_fn::sphere::monomial_moment(&g);
        assert!((q - e).abs() <= 1e-13 * e.abs().max(1.0), "{g:?}: {q} vs {e}");
    }
}

#[test]
fn m_of_unit_gaussian() {
    let s = Signature::complex(1, 1);
    let f = TestFunction::gaussian(s, 1.0, 1.0);
    for (rho, tau) in [(1.0, 0.5), (3.0, -2.0), (0.2, 0.0)] {
        let (m, err) = m_transform(&f, rho, tau, &[0.0], &QuadGrid::default()).unwrap();
        assert!(close(m, c(4.0 * PI * PI * (-rho as f64).exp()), 1e-13), "{m}");
        assert!(err < 1e-12);
    }
    assert!(m_transform(&f, 1.0, 2.0, &[0.0], &QuadGrid::default()).is_err());
    let z = TestFunction::zero(s, 1.0, 1.0);
    assert_eq!(m_transform(&z, 1.0, 0.0, &[0.0], &QuadGrid::default()).unwrap().0, c(0.0));

    let sq = Signature::quat(1, 1);
    let fq = TestFunction::gaussian(sq, 1.0, 1.0);
    let (m, _) = m_transform(&fq, 2.0, 0.5, &[0.0; 3], &QuadGrid::default()).unwrap();
    let s3 = 2.0 * PI * PI;
    assert!(close(m, c(s3 * s3 * (-2f64).exp()), 1e-13));
}

#[test]
fn n_of_unit_gaussian_both_routes() {
    let s = Signature::complex(1, 1);
    let f = TestFunction::gaussian(s, 1.0, 1.0);
    let prof = NProfile::new(&f);
    for tau in [-3.0, -0.4, 0.0, 0.7, 5.0] {
        let oracle = c(4.0 * PI * PI * (-(tau as f64).abs()).exp());
        assert!(close(prof.eval(tau, &[0.0]), oracle, 1e-14));
        let (q, _) = n_transform(&f, tau, &[0.0], &QuadGrid::default());
        assert!(close(q, oracle, 1e-12), "tau={tau}: {q} vs {oracle}");
    }
    assert!((prof.eval(0.0, &[0.0]).re - 39.4784176043574).abs() < 1e-9);
    for tau in [30.0, -30.0, 45.0] {
        assert!(prof.eval(tau, &[0.0]).norm() < 1e-10 * 4.0 * PI * PI);
    }
}

#[test]
fn n_quadrature_matches_exact_for_polynomial_members() {
    let s = Signature::complex(2, 1);
    let mut f = TestFunction::gaussian(s, 0.8, 1.3);
    f.add_term(vec![2, 0, 0, 2, 2, 0, 1], C::new(0.3, -0.2));
    f.add_term(vec![0, 0, 4, 0, 0, 2, 0], C::new(-1.1, 0.0));
    f.add_term(vec![1, 0, 0, 0, 0, 0, 0], C::new(5.0, 0.0)); // odd, integrates out
    let prof = NProfile::new(&f);
    for tau in [-2.0, -0.3, 0.0, 0.4, 1.7] {
        let (q, err) = n_transform(&f, tau, &[0.6], &QuadGrid::default());
        let e = prof.eval(tau, &[0.6]);
        assert!(close(q, e, 1e-11), "tau={tau}: {q} vs {e} (err {err})");
    }
}

#[test]
fn tau_derivative_examples() {
    let s = Signature::complex(1, 1);
    let f = TestFunction::gaussian(s, 1.0, 1.0);
    let (d0, _) = n_tau_derivative_at_zero(&f, 0, &[0.0]).unwrap();
    assert!(close(d0, c(4.0 * PI * PI), 1e-12));
    assert!(matches!(
        n_tau_derivative_at_zero(&f, 1, &[0.0]),
        Err(TengError::Order { j: 1, max: 0 })
    ));

    // even profile at n_eff = 3: first derivative vanishes
    let s3 = Signature::complex(2, 1);
    let f3 = TestFunction::gaussian(s3, 1.0, 1.0);
    let prof = NProfile::new(&f3);
    // p = 2, q = 1 is not symmetric in τ; use p = q for parity
    let s4 = Signature::complex(2, 2);
    let f4 = TestFunction::gaussian(s4, 1.0, 1.0);
    let (d1, _) = n_tau_derivative_at_zero(&f4, 1, &[0.0]).unwrap();
    assert!(d1.norm() < 1e-8, "{d1}");
    assert!(NProfile::new(&f4).jet(1, &[0.0]).unwrap().norm() < 1e-14);

    // FD route against exact jets
    for j in 0..=1 {
        let (fd, _) = n_tau_derivative_at_zero(&f3, j, &[0.2]).unwrap();
        let ex = prof.jet(j, &[0.2]).unwrap();
        assert!(close(fd, ex, 1e-7), "j={j}: {fd} vs {ex}");
    }
}

#[test]
fn quaternionic_n_at_zero_against_monte_carlo() {
    // Nf(0) = ∫₀^∞ Mf(ρ,0) ρ^{2} dρ for p = q = 1 over ℍ.
    // Sample ρ ~ Gamma(3,1) and directions uniform on S³ × S³.
    let s = Signature::quat(1, 1);
    let mut f = TestFunction::gaussian(s, 1.0, 1.0);
    f.add_term(vec![2, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0], c(1.0));
    f.add_term(vec![0, 0, 0, 0, 0, 2, 2, 0, 0, 0, 0], c(0.5));
    let exact = NProfile::new(&f).eval(0.0, &[0.0; 3]).re;

    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let gamma = Gamma::new(3.0, 1.0).unwrap();
    let s3 = 2.0 * PI * PI;
    let scale = 2.0 * s3 * s3; // Γ(3) |S³|²
    let n = 200_000;
    let (mut sum, mut sum2) = (0.0, 0.0);
    let mut x = [0.0; 11];
    for _ in 0..n {
        let rho: f64 = gamma.sample(&mut rng);
        let r = (rho / 2.0).sqrt();
        for block in [0..4, 4..8] {
            let g: Vec<f64> = (0..4).map(|_| rng.sample::<f64, _>(StandardNormal)).collect();
            let nrm = g.iter().map(|t| t * t).sum::<f64>().sqrt();
            for (k, i) in block.enumerate() {
                x[i] = r * g[k] / nrm;
            }
        }
        let val = f.eval(&x).re * rho.exp() * scale;
        sum += val;
        sum2 += val * val;
    }
    let mean = sum / n as f64;
    let sd = ((sum2 / n as f64 - mean * mean) / n as f64).sqrt();
    assert!((mean - exact).abs() <= 3.0 * sd, "MC {mean} ± {sd} vs exact {exact}");
}

#[test]
fn g_profile_examples() {
    let s = Signature::complex(1, 1);
    let f = TestFunction::gaussian(s, 1.0, 1.0);
    let prof = NProfile::new(&f);
    assert_eq!(prof.g(0.0, &[0.0]), c(0.0));
    for tau in [-4.0, -1.0, -0.01, 0.3, 2.5, 9.0] {
        let want = c(4.0 * PI * PI * ((-(tau as f64).abs()).exp() - 1.0));
        assert!(close(prof.g(tau, &[0.0]), want, 1e-13), "tau={tau}");
    }
}

#[test]
fn g_profile_vanishing_order() {
    for s in [Signature::complex(1, 1), Signature::complex(2, 1), Signature::complex(2, 2), Signature::quat(1, 1)] {
        let mut f = TestFunction::gaussian(s, 1.0, 1.0);
        let mut beta = vec![0u32; s.dim()];
        beta[0] = 2;
        f.add_term(beta, c(0.7));
        let prof = NProfile::new(&f);
        let t = vec![0.1; s.center_dim()];
        let want = (s.n_eff() - 1) as f64;
        for side in [1.0, -1.0] {
            let taus: Vec<f64> = (0..8).map(|i| side * 0.1 * 0.5f64.powi(i)).collect();
            let logs: Vec<(f64, f64)> = taus
                .iter()
                .map(|&t0| (t0.abs().ln(), prof.g(t0, &t).norm().ln()))
                .collect();
            let n = logs.len() as f64;
            let mx = logs.iter().map(|p| p.0).sum::<f64>() / n;
            let my = logs.iter().map(|p| p.1).sum::<f64>() / n;
            let slope = logs.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum::<f64>()
                / logs.iter().map(|p| (p.0 - mx).powi(2)).sum::<f64>();
            assert!(slope >= want - 0.05, "{s} side {side}: slope {slope}, want {want}");
        }
    }
}

#[test]
fn profile_is_smooth_to_order_n_minus_2_only() {
    for s in [Signature::complex(1, 2), Signature::complex(3, 1), Signature::quat(1, 1)] {
        let f = TestFunction::gaussian(s, 1.2, 1.0);
        let prof = NProfile::new(&f);
        assert!(prof.jet_mismatch() < 1e-13, "{s}");
        let j = s.n_eff() - 1;
        let t = vec![0.0; s.center_dim()];
        let up = prof.one_sided_derivative(j, &t, true);
        let dn = prof.one_sided_derivative(j, &t, false);
        assert!((up - dn).norm() > 1e-6 * up.norm(), "{s}: order {j} should jump");
    }
}

#[test]
fn kappa_is_the_jacobian_constant() {
    for s in [Signature::complex(1, 1), Signature::complex(2, 1), Signature::complex(1, 3), Signature::quat(1, 1), Signature::quat(2, 1)] {
        let k0 = kappa_closed_form(&s);
        let mut fs = vec![TestFunction::gaussian(s, 1.0, 1.0), TestFunction::gaussian(s, 0.4, 2.0)];
        for (i, a) in [(0usize, 0.7), (1, 1.9), (2, 1.1)] {
            let mut f = TestFunction::gaussian(s, a, 1.0);
            let mut beta = vec![0u32; s.dim()];
            beta[i] = 2;
            beta[s.d_real() - 1] = 2;
            f.add_term(beta, C::new(0.4, 0.1));
            fs.push(f);
        }
        for f in &fs {
            let t = vec![0.2; s.center_dim()];
            let k = kappa(f, &t);
            assert!((k - c(k0)).norm() <= 1e-6 * k0, "{s}: {k} vs {k0}");
        }
    }
    assert_eq!(kappa_closed_form(&Signature::complex(1, 1)), 0.125);
}

#[test]
fn kappa_by_brute_force_quadrature() {
    // ∫ Nf dτ by Gauss-Legendre on the quadrature profile, against ∫ f dv
    let s = Signature::complex(1, 1);
    let mut f = TestFunction::gaussian(s, 1.0, 1.0);
    f.add_term(vec![2, 0, 0, 2, 0], c(1.0));
    let grid = QuadGrid::coarse();
    let rule = special_fn::quad::gl_rule(24);
    let mut total = C::new(0.0, 0.0);
    for k in 0..40 {
        let lo = -30.0 + 1.5 * k as f64;
        total += rule.integrate(lo, lo + 1.5, |tau| n_transform(&f, tau, &[0.0], &grid).0);
    }
    let k = f.v_integral(&[0.0]) / total;
    assert!((k.re - 0.125).abs() < 1e-8, "{k}");
}

#[test]
fn u11_invariance() {
    let s = Signature::complex(1, 1);
    let mut f = TestFunction::gaussian(s, 1.0, 1.0);
    f.add_term(vec![1, 0, 0, 0, 0], c(0.5));
    f.add_term(vec![0, 0, 0, 2, 0], c(1.0));
    f.add_term(vec![1, 1, 0, 0, 0], c(0.3));
    f.add_term(vec![2, 0, 2, 0, 0], c(-0.2));
    let prof = NProfile::new(&f);
    let t0 = 0.3;
    let eval_v = |v: &[f64]| f.eval(&[v[0], v[1], v[2], v[3], t0]);

    let (th, ph) = (0.7, -1.9);
    let rot = |v: &[f64]| {
        let (c1, s1) = (th as f64).sin_cos();
        let (c2, s2) = (ph as f64).sin_cos();
        eval_v(&[c1 * v[0] - s1 * v[1], s1 * v[0] + c1 * v[1], c2 * v[2] - s2 * v[3], s2 * v[2] + c2 * v[3]])
    };
    let sh = 0.3f64;
    let hyp = |v: &[f64]| {
        let (ch, sn) = (sh.cosh(), sh.sinh());
        eval_v(&[
            ch * v[0] + sn * v[2],
            ch * v[1] + sn * v[3],
            sn * v[0] + ch * v[2],
            sn * v[1] + ch * v[3],
        ])
    };
    let grid = QuadGrid { per_angle: 32, radial_panels: 32, radial_nodes: 32 };
    for tau in [-1.0, 0.2, 1.5] {
        let want = prof.eval(tau, &[t0]);
        let r = n_transform_fn(&s, rot, tau, 1.0, &grid);
        let h = n_transform_fn(&s, hyp, tau, (-2.0 * sh).exp(), &grid);
        assert!((r - want).norm() <= 1e-8 * want.norm(), "rotation tau={tau}: {r} vs {want}");
        assert!((h - want).norm() <= 1e-8 * want.norm(), "hyperbolic tau={tau}: {h} vs {want}");
    }
}
