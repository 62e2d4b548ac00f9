//! Richardson-extrapolated finite differences and limits.

use crate::combin::binom;
use num_complex::Complex;

/// j-th derivative of `f` at `x` from central differences
/// Δ_h^j f / h^j, extrapolated in h² over a halving sequence.
/// Returns the estimate and the last table difference.
pub fn derivative<F: Fn(f64) -> Complex<f64>>(f: F, x: f64, j: u32, h0: f64, levels: usize) -> (Complex<f64>, f64) {
    if j == 0 {
        return (f(x), 0.0);
    }
    let central = |h: f64| {
        // Δ^j with nodes x + (j/2 - i) h
        let mut acc = Complex::new(0.0, 0.0);
        for i in 0..=j {
            let sgn = if i % 2 == 0 { 1.0 } else { -1.0 };
            let node = x + (j as f64 / 2.0 - i as f64) * h;
            acc += f(node) * (sgn * binom(j as i64, i as i64));
        }
        acc / h.powi(j as i32)
    };
    let mut table: Vec<Vec<Complex<f64>>> = Vec::new();
    let mut h = h0;
    let mut best = Complex::new(0.0, 0.0);
    let mut best_err = f64::INFINITY;
    for m in 0..levels {
        let mut row = vec![central(h)];
        for k in 1..=m {
            let fac = 4f64.powi(k as i32);
            let v = (row[k - 1] * fac - table[m - 1][k - 1]) / (fac - 1.0);
            row.push(v);
        }
        if m > 0 {
            let err = (row[m] - table[m - 1][m - 1]).norm();
            if err < best_err {
                best_err = err;
                best = row[m];
            }
        } else {
            best = row[0];
        }
        table.push(row);
        h *= 0.5;
    }
    (best, best_err)
}

/// Extrapolate `g(ε)` to ε → 0 assuming an expansion in integer powers
/// of ε, using the sequence ε₀, ε₀/2, ...
pub fn limit_to_zero<F: Fn(f64) -> Complex<f64>>(g: F, eps0: f64, levels: usize) -> (Complex<f64>, f64) {
    let mut table: Vec<Vec<Complex<f64>>> = Vec::new();
    let mut eps = eps0;
    let mut best = Complex::new(0.0, 0.0);
    let mut best_err = f64::INFINITY;
    for m in 0..levels {
        let mut row = vec![g(eps)];
        for k in 1..=m {
            let fac = 2f64.powi(k as i32);
            let v = (row[k - 1] * fac - table[m - 1][k - 1]) / (fac - 1.0);
            row.push(v);
        }
        if m > 0 {
            let err = (row[m] - table[m - 1][m - 1]).norm();
            if err < best_err {
                best_err = err;
                best = row[m];
            }
        } else {
            best = row[0];
        }
        table.push(row);
        eps *= 0.5;
    }
    (best, best_err)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn third_derivative_of_exp() {
        let (d, _) = derivative(|x| Complex::new(x.exp(), 0.0), 0.3, 3, 0.2, 6);
        assert!((d.re - 0.3f64.exp()).abs() < 1e-9);
    }

    #[test]
    fn limit_of_linear_tail() {
        let (v, _) = limit_to_zero(|e| Complex::new(2.0 + 3.0 * e + e * e, 0.0), 0.5, 6);
        assert!((v.re - 2.0).abs() < 1e-12);
    }
}
