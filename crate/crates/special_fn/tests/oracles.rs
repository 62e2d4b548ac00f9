use num_complex::Complex64 as C;
use special_fn::quad::{adaptive_semi_infinite, tanh_sinh};
use special_fn::*;

fn c(x: f64) -> C {
    C::new(x, 0.0)
}

#[test]
fn gamma_trivial_values() {
    assert!((gamma(c(1.0)).unwrap() - c(1.0)).norm() < 1e-14);
    assert!((gamma(c(4.0)).unwrap() - c(6.0)).norm() < 1e-12);
}

#[test]
fn gamma_half_against_quadrature() {
    // ∫₀^∞ t^{-1/2} e^{-t} dt split at 1
    let head = tanh_sinh(|_t: f64, da: f64, _| c(da.powf(-0.5) * (-da).exp()), 0.0, 1.0, 1e-14)
        .unwrap()
        .value;
    let tail = adaptive_semi_infinite(|t| c(t.powf(-0.5) * (-t).exp()), 1.0, 1e-15, 1e-14)
        .unwrap()
        .value;
    let oracle = head + tail;
    assert!((oracle.re - 1.772_453_850_9).abs() < 1e-10);
    assert!((gamma(c(0.5)).unwrap() - oracle).norm() < 1e-12);
}

#[test]
fn beta_against_quadrature() {
    let q = |a: f64, b: f64| {
        tanh_sinh(
            move |_x: f64, da: f64, db: f64| c(da.powf(a - 1.0) * db.powf(b - 1.0)),
            0.0,
            1.0,
            1e-14,
        )
        .unwrap()
        .value
    };
    let b1 = beta(c(1.5), c(0.5)).unwrap();
    assert!((b1 - q(1.5, 0.5)).norm() < 1e-11);
    assert!((b1.re - std::f64::consts::FRAC_PI_2).abs() < 1e-12);
    let b2 = beta(c(2.0), c(3.0)).unwrap();
    assert!((b2 - q(2.0, 3.0)).norm() < 1e-13);
    assert!((b2.re - 1.0 / 12.0).abs() < 1e-14);
    assert!((beta(c(1.0), c(1.0)).unwrap() - c(1.0)).norm() < 1e-14);
}

#[test]
fn incomplete_beta_small_cases() {
    let v = |a: f64, b: f64| incomplete_beta_half(c(a), c(b)).unwrap();
    assert!((v(1.0, 1.0) - c(0.5)).norm() < 1e-12);
    assert!((v(2.0, 1.0) - c(0.125)).norm() < 1e-12);
    assert!((v(1.0, 2.0) - c(0.375)).norm() < 1e-12);
}

#[test]
fn incomplete_beta_matches_series_on_complex_parameters() {
    // b with negative real part is where continued fractions struggle
    for (a, b) in [
        (C::new(0.35, 0.0), C::new(-1.65, 0.0)),
        (C::new(1.2, 0.5), C::new(-0.7, -0.5)),
        (C::new(0.05, 0.0), C::new(3.0, 0.0)),
        (C::new(2.5, -1.0), C::new(-2.5, 1.0)),
    ] {
        let q = incomplete_beta_half(a, b).unwrap();
        let s = incomplete_beta_half_series(a, b);
        assert!((q - s).norm() <= 1e-10 * s.norm(), "{a} {b}: {q} vs {s}");
    }
}

#[test]
fn incomplete_beta_rejects_nonpositive_a() {
    assert!(matches!(
        incomplete_beta_half(c(0.0), c(1.0)),
        Err(SpecialError::Domain(_))
    ));
}

#[test]
fn laguerre_closed_forms() {
    assert_eq!(laguerre(0, 5, 7.3), 1.0);
    assert!((laguerre(1, 1, 3.0f64) + 1.0).abs() < 1e-15);
    assert!((laguerre(2, 0, 1.0f64) + 0.5).abs() < 1e-15);
}

#[test]
fn generating_identity_examples() {
    let r0 = laguerre_generating_residual(2, 1.0, c(0.0), 0);
    assert!(r0.residual < 1e-15);
    assert!(laguerre_generating_residual(2, 1.0, c(0.3), 100).residual <= 1e-10);
    assert!(laguerre_generating_residual(3, 5.0, c(-0.5), 200).residual <= 1e-8);
    assert!(laguerre_generating_residual(2, 1.0, c(0.95), 50).divergence_warning);
}
