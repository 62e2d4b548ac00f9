//! Gamma, Beta and the incomplete Beta function on [0, 1/2].

use crate::error::SpecialError;
use crate::quad::tanh_sinh;
use crate::scalar::{cst, Real};
use num_complex::Complex;

// Lanczos approximation, g = 7, nine coefficients.
const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

fn pole_check<T: Real>(z: Complex<T>) -> Result<(), SpecialError> {
    let re = z.re.to_f64().unwrap_or(f64::NAN);
    let im = z.im.to_f64().unwrap_or(f64::NAN);
    if re <= 0.5 && im.abs() < 1e-12 {
        let nearest = re.round();
        if nearest <= 0.0 && (re - nearest).abs() < 1e-12 {
            return Err(SpecialError::Pole { re, im });
        }
    }
    Ok(())
}

/// Γ(z) for complex z, Lanczos with reflection for Re z < 1/2.
///
/// ```
/// use special_fn::gamma;
/// use num_complex::Complex64;
/// let g = gamma(Complex64::new(4.0, 0.0)).unwrap();
/// assert!((g.re - 6.0).abs() < 1e-12);
/// ```
pub fn gamma<T: Real>(z: Complex<T>) -> Result<Complex<T>, SpecialError> {
    pole_check(z)?;
    let half = cst::<T>(0.5);
    if z.re < half {
        let pi = T::PI();
        let s = (z * pi).sin();
        let g1 = gamma_lanczos(Complex::new(T::one(), T::zero()) - z);
        return Ok(Complex::new(pi, T::zero()) / (s * g1));
    }
    Ok(gamma_lanczos(z))
}

fn gamma_lanczos<T: Real>(z: Complex<T>) -> Complex<T> {
    let one = T::one();
    let zm = z - one;
    let mut x = Complex::new(cst::<T>(LANCZOS[0]), T::zero());
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        x = x + Complex::new(cst::<T>(c), T::zero()) / (zm + cst::<T>(i as f64));
    }
    let t = zm + cst::<T>(LANCZOS_G + 0.5);
    let sqrt_2pi = (T::PI() + T::PI()).sqrt();
    x * t.powc(zm + cst::<T>(0.5)) * (-t).exp() * sqrt_2pi
}

/// Real-argument convenience wrapper.
pub fn gamma_real<T: Real>(x: T) -> Result<T, SpecialError> {
    gamma(Complex::new(x, T::zero())).map(|g| g.re)
}

/// B(a, b) = Γ(a)Γ(b)/Γ(a+b).
pub fn beta<T: Real>(a: Complex<T>, b: Complex<T>) -> Result<Complex<T>, SpecialError> {
    let ga = gamma(a)?;
    let gb = gamma(b)?;
    let gab = gamma(a + b)?;
    Ok(ga * gb / gab)
}

/// B_{1/2}(a, b) = ∫₀^{1/2} t^{a-1}(1-t)^{b-1} dt by double-exponential
/// quadrature. Requires Re a > 0; `b` is unrestricted.
pub fn incomplete_beta_half<T: Real>(
    a: Complex<T>,
    b: Complex<T>,
) -> Result<Complex<T>, SpecialError> {
    if a.re <= T::zero() {
        return Err(SpecialError::Domain(format!(
            "incomplete_beta_half needs Re(a) > 0, got {:?}",
            a.re
        )));
    }
    let one = Complex::new(T::one(), T::zero());
    let res = tanh_sinh(
        |t: T, _da: T, db: T| {
            // t is the distance to 0, db the distance to 1/2; 1 - t = 1/2 + db.
            let tt = Complex::new(t, T::zero());
            let omt = Complex::new(cst::<T>(0.5) + db, T::zero());
            (tt.ln() * (a - one)).exp() * (omt.ln() * (b - one)).exp()
        },
        T::zero(),
        cst::<T>(0.5),
        cst::<T>(1e-13),
    )?;
    Ok(res.value)
}

/// Independent route: B_x(a,b) = Σ_k (1-b)_k/k! · x^{a+k}/(a+k) at x = 1/2.
/// Converges geometrically; used as an oracle in tests.
pub fn incomplete_beta_half_series<T: Real>(a: Complex<T>, b: Complex<T>) -> Complex<T> {
    let half = cst::<T>(0.5);
    let one = Complex::new(T::one(), T::zero());
    let mut coef = one; // (1-b)_k / k!
    let mut xk = Complex::new(half, T::zero()).powc(a);
    let mut sum = Complex::new(T::zero(), T::zero());
    for k in 0..2000 {
        let kf = cst::<T>(k as f64);
        let term = coef * xk / (a + kf);
        sum = sum + term;
        if k > 10 && term.norm() < cst::<T>(1e-18) * sum.norm() {
            break;
        }
        coef = coef * (one - b + kf) / (kf + T::one());
        xk = xk * half;
    }
    sum
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    #[test]
    fn gamma_half_is_sqrt_pi() {
        let g = gamma(Complex64::new(0.5, 0.0)).unwrap();
        assert!((g.re - std::f64::consts::PI.sqrt()).abs() < 1e-13);
    }

    #[test]
    fn reflection_branch_matches_recurrence() {
        let z = Complex64::new(-1.3, 0.4);
        let lhs = gamma(z + 1.0).unwrap();
        let rhs = z * gamma(z).unwrap();
        assert!((lhs - rhs).norm() < 1e-12 * lhs.norm());
    }

    #[test]
    fn pole_is_reported() {
        assert!(matches!(
            gamma(Complex64::new(-2.0, 0.0)),
            Err(SpecialError::Pole { .. })
        ));
    }
}
