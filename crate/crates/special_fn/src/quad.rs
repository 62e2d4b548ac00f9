//! Quadrature rules: Gauss-Legendre, double-exponential, adaptive
//! Gauss-Kronrod and a hyperspherical product rule.

use crate::error::SpecialError;
use crate::scalar::{cst, Real};
use num_complex::Complex;
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

#[derive(Debug, Clone, Copy)]
pub struct QuadResult<V> {
    pub value: V,
    pub error: f64,
    pub evals: usize,
}

/// Gauss-Legendre nodes and weights on [-1, 1].
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussLegendre {
    /// Newton iteration on P_n starting from the Tricomi guess.
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "Gauss-Legendre needs at least one node");
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let nf = n as f64;
        for i in 0..n.div_ceil(2) {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
            let mut dp = 1.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre_with_derivative(n, x);
            if d.is_finite() {
                dp = d;
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        if n % 2 == 1 {
            nodes[n / 2] = 0.0;
        }
        GaussLegendre { nodes, weights }
    }

    /// Nodes and weights mapped onto [a, b].
    pub fn mapped(&self, a: f64, b: f64) -> impl Iterator<Item = (f64, f64)> + '_ {
        let c = 0.5 * (a + b);
        let h = 0.5 * (b - a);
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(move |(&x, &w)| (c + h * x, h * w))
    }

    pub fn integrate<F: FnMut(f64) -> Complex<f64>>(&self, a: f64, b: f64, mut f: F) -> Complex<f64> {
        let mut acc = Complex::new(0.0, 0.0);
        for (x, w) in self.mapped(a, b) {
            acc += f(x) * w;
        }
        acc
    }
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let nf = n as f64;
    let d = nf * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Cached Gauss-Legendre rule.
pub fn gl_rule(n: usize) -> Arc<GaussLegendre> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<GaussLegendre>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().expect("gl cache poisoned");
    guard
        .entry(n)
        .or_insert_with(|| Arc::new(GaussLegendre::new(n)))
        .clone()
}

/// Composite Gauss-Legendre over consecutive panels `edges[i]..edges[i+1]`.
pub fn gl_panels<F: FnMut(f64) -> Complex<f64>>(edges: &[f64], n: usize, mut f: F) -> Complex<f64> {
    let rule = gl_rule(n);
    let mut acc = Complex::new(0.0, 0.0);
    for w in edges.windows(2) {
        acc += rule.integrate(w[0], w[1], &mut f);
    }
    acc
}

/// Double-exponential (tanh-sinh) quadrature of a complex integrand on
/// [a, b]. The integrand receives `(x, x - a, b - x)` so endpoint
/// singularities can be evaluated without cancellation.
pub fn tanh_sinh<T, F>(f: F, a: T, b: T, tol: T) -> Result<QuadResult<Complex<T>>, SpecialError>
where
    T: Real,
    F: Fn(T, T, T) -> Complex<T>,
{
    let half = cst::<T>(0.5);
    let two = cst::<T>(2.0);
    let len = b - a;
    let hpi = T::FRAC_PI_2();
    let tiny = T::min_positive_value() * cst::<T>(1e10);
    let mut evals = 0usize;

    // Point at offset s with step weight left to the caller.
    let point = |s: T, evals: &mut usize| -> Option<Complex<T>> {
        let y = hpi * s.sinh();
        // fractions of len to each end, computed from the side that does not overflow
        let e = (-(two * y.abs())).exp();
        let (frac_a, frac_b) = if y >= T::zero() {
            (T::one() / (T::one() + e), e / (T::one() + e))
        } else {
            (e / (T::one() + e), T::one() / (T::one() + e))
        };
        let da = len * frac_a;
        let db = len * frac_b;
        if da < tiny || db < tiny {
            return None;
        }
        let dxds = len * hpi * s.cosh() * two * frac_a * frac_b;
        *evals += 1;
        let v = f(a + da, da, db);
        let t = v * dxds;
        if t.re.is_finite() && t.im.is_finite() {
            Some(t)
        } else {
            None
        }
    };

    let zero = Complex::new(T::zero(), T::zero());
    // level 0, h = 1, integer points
    let mut h = T::one();
    let mut sum = point(T::zero(), &mut evals).unwrap_or(zero);
    let walk = |start: T, step: T, sum: &mut Complex<T>, evals: &mut usize| {
        for dir in [T::one(), -T::one()] {
            let mut s = start;
            loop {
                match point(dir * s, evals) {
                    Some(t) => {
                        *sum = *sum + t;
                        if s > cst::<T>(3.0) && t.norm() <= cst::<T>(1e-20) * sum.norm() {
                            break;
                        }
                    }
                    None => {
                        if s > half {
                            break;
                        }
                    }
                }
                s = s + step;
                if s > cst::<T>(8.0) {
                    break;
                }
            }
        }
    };
    walk(T::one(), T::one(), &mut sum, &mut evals);
    let mut prev = sum * h;
    for _level in 1..=14 {
        h = h * half;
        // new odd points: h, 3h, 5h, ...
        let mut add = zero;
        walk(h, h + h, &mut add, &mut evals);
        sum = sum + add;
        let cur = sum * h;
        let err = (cur - prev).norm();
        if _level >= 4 && err <= tol * cur.norm().max(tiny) {
            return Ok(QuadResult {
                value: cur,
                error: err.to_f64().unwrap_or(f64::NAN),
                evals,
            });
        }
        prev = cur;
    }
    let err = (sum * h - prev).norm().to_f64().unwrap_or(f64::NAN);
    if err.is_finite() && err < 1e-6 * prev.norm().to_f64().unwrap_or(0.0).max(1e-300) {
        return Ok(QuadResult { value: prev, error: err, evals });
    }
    Err(SpecialError::Convergence(format!(
        "tanh-sinh did not reach tolerance, last error estimate {err:e}"
    )))
}

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

fn gk15<F: FnMut(f64) -> Complex<f64>>(f: &mut F, a: f64, b: f64) -> (Complex<f64>, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut k = fc * WGK[7];
    let mut g = fc * WG[3];
    for j in 0..7 {
        let x = h * XGK[j];
        let s = f(c - x) + f(c + x);
        k += s * WGK[j];
        if j % 2 == 1 {
            g += s * WG[j / 2];
        }
    }
    (k * h, ((k - g) * h).norm())
}

/// Globally adaptive G7-K15 on a finite interval.
pub fn adaptive_gk15<F: FnMut(f64) -> Complex<f64>>(
    mut f: F,
    a: f64,
    b: f64,
    abs_tol: f64,
    rel_tol: f64,
) -> Result<QuadResult<Complex<f64>>, SpecialError> {
    let mut pieces = vec![{
        let (v, e) = gk15(&mut f, a, b);
        (a, b, v, e)
    }];
    let mut evals = 15;
    for _ in 0..4000 {
        let total: Complex<f64> = pieces.iter().map(|p| p.2).sum();
        let err: f64 = pieces.iter().map(|p| p.3).sum();
        if err <= abs_tol.max(rel_tol * total.norm()) {
            return Ok(QuadResult { value: total, error: err, evals });
        }
        let (idx, _) = pieces
            .iter()
            .enumerate()
            .max_by(|x, y| x.1 .3.total_cmp(&y.1 .3))
            .expect("non-empty");
        let (lo, hi, _, _) = pieces.swap_remove(idx);
        let mid = 0.5 * (lo + hi);
        let (v1, e1) = gk15(&mut f, lo, mid);
        let (v2, e2) = gk15(&mut f, mid, hi);
        evals += 30;
        pieces.push((lo, mid, v1, e1));
        pieces.push((mid, hi, v2, e2));
    }
    let total: Complex<f64> = pieces.iter().map(|p| p.2).sum();
    let err: f64 = pieces.iter().map(|p| p.3).sum();
    Err(SpecialError::Convergence(format!(
        "adaptive G7K15 stopped at {total} with error {err:e}"
    )))
}

/// ∫_a^∞ f via x = a + u/(1-u).
pub fn adaptive_semi_infinite<F: FnMut(f64) -> Complex<f64>>(
    mut f: F,
    a: f64,
    abs_tol: f64,
    rel_tol: f64,
) -> Result<QuadResult<Complex<f64>>, SpecialError> {
    adaptive_gk15(
        |u| {
            if u >= 1.0 {
                return Complex::new(0.0, 0.0);
            }
            let d = 1.0 - u;
            let v = f(a + u / d) / (d * d);
            if v.re.is_finite() && v.im.is_finite() {
                v
            } else {
                Complex::new(0.0, 0.0)
            }
        },
        0.0,
        1.0,
        abs_tol,
        rel_tol,
    )
}

/// Product rule on S^{d-1} ⊂ R^d in hyperspherical coordinates.
///
/// Polar angles use Gauss-Legendre in cos θ with the sin^{k} weight folded
/// into Jacobi-free form (plain GL in θ), the last angle is a uniform
/// trapezoid which is spectrally exact for trigonometric polynomials.
#[derive(Debug, Clone)]
pub struct SphereRule {
    pub dim: usize,
    pub points: Vec<Vec<f64>>,
    pub weights: Vec<f64>,
}

impl SphereRule {
    pub fn new(dim: usize, per_angle: usize) -> Self {
        assert!(dim >= 1);
        if dim == 1 {
            return SphereRule {
                dim,
                points: vec![vec![1.0], vec![-1.0]],
                weights: vec![1.0, 1.0],
            };
        }
        let gl = gl_rule(per_angle);
        let naz = 2 * per_angle;
        // start with the circle
        let mut points: Vec<Vec<f64>> = Vec::with_capacity(naz);
        let mut weights = Vec::with_capacity(naz);
        for j in 0..naz {
            let phi = 2.0 * std::f64::consts::PI * (j as f64 + 0.5) / naz as f64;
            points.push(vec![phi.cos(), phi.sin()]);
            weights.push(2.0 * std::f64::consts::PI / naz as f64);
        }
        // lift S^{k-1} to S^k with x_{k+1} = cos θ, weight sin^{k-1} θ dθ
        for k in 2..dim {
            let mut np = Vec::with_capacity(points.len() * per_angle);
            let mut nw = Vec::with_capacity(points.len() * per_angle);
            for (th, w) in gl.mapped(0.0, std::f64::consts::PI) {
                let (s, c) = th.sin_cos();
                let jac = s.powi(k as i32 - 1) * w;
                for (p, &pw) in points.iter().zip(&weights) {
                    let mut q: Vec<f64> = p.iter().map(|x| x * s).collect();
                    q.push(c);
                    np.push(q);
                    nw.push(pw * jac);
                }
            }
            points = np;
            weights = nw;
        }
        SphereRule { dim, points, weights }
    }

    pub fn integrate<F: FnMut(&[f64]) -> f64>(&self, mut f: F) -> f64 {
        let mut acc = crate::sum::Neumaier::default();
        for (p, &w) in self.points.iter().zip(&self.weights) {
            acc.add(f(p) * w);
        }
        acc.total()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gl_integrates_polynomials_exactly() {
        let r = GaussLegendre::new(6);
        let v = r.integrate(0.0, 2.0, |x| Complex::new(x.powi(11), 0.0));
        assert!((v.re - 2f64.powi(12) / 12.0).abs() < 1e-10);
    }

    #[test]
    fn tanh_sinh_endpoint_singularity() {
        let r = tanh_sinh(
            |_x: f64, da: f64, _db: f64| Complex::new(da.powf(-0.5), 0.0),
            0.0,
            1.0,
            1e-13,
        )
        .unwrap();
        assert!((r.value.re - 2.0).abs() < 1e-11);
    }

    #[test]
    fn gk_semi_infinite_gaussian() {
        let r = adaptive_semi_infinite(|x| Complex::new((-x * x).exp(), 0.0), 0.0, 1e-14, 1e-13)
            .unwrap();
        assert!((r.value.re - 0.5 * std::f64::consts::PI.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn sphere_area_s3() {
        let s = SphereRule::new(4, 16);
        let a = s.integrate(|_| 1.0);
        assert!((a - 2.0 * std::f64::consts::PI.powi(2)).abs() < 1e-12);
    }
}
