//! Factorials and binomial coefficients in floating point.

/// n! as a float. Exact up to 22!.
pub fn factorial(n: u32) -> f64 {
    (1..=n).fold(1.0, |acc, k| acc * k as f64)
}

/// Binomial coefficient with integer arguments.
///
/// Zero for `k < 0`. For `k >= 0` the falling-factorial form
/// a(a-1)...(a-k+1)/k! is used, which also covers negative upper indices
/// and gives 0 when `0 <= a < k`.
pub fn binom(a: i64, k: i64) -> f64 {
    if k < 0 {
        return 0.0;
    }
    let mut acc = 1.0;
    for i in 0..k {
        acc *= (a - i) as f64 / (i + 1) as f64;
    }
    acc
}

/// Binomial with the "zero outside the Pascal triangle" convention:
/// zero whenever `k < 0` or `k > a`, including negative `a`.
pub fn binom_triangle(a: i64, k: i64) -> f64 {
    if k < 0 || a < 0 || k > a {
        0.0
    } else {
        binom(a, k)
    }
}
