//! Closed-form Fourier transforms of t^j e^{−bt²}.

use num_complex::Complex64 as C;

/// ∫_ℝ e^{−iωt} t^j e^{−bt²} dt = √(π/b) e^{−ω²/4b} P_j(ω) with
/// P_0 = 1 and P_{j+1} = i (P_j′ − (ω/2b) P_j).
pub fn gauss_moment_ft(j: u32, b: f64, omega: f64) -> C {
    // P_j as coefficients in ω
    let mut p: Vec<C> = vec![C::new(1.0, 0.0)];
    for _ in 0..j {
        let mut next = vec![C::new(0.0, 0.0); p.len() + 1];
        for (k, c) in p.iter().enumerate() {
            if k > 0 {
                next[k - 1] += c * k as f64;
            }
            next[k + 1] -= c / (2.0 * b);
        }
        p = next.into_iter().map(|c| c * C::new(0.0, 1.0)).collect();
    }
    let val = p.iter().rev().fold(C::new(0.0, 0.0), |acc, c| acc * omega + c);
    val * ((std::f64::consts::PI / b).sqrt() * (-omega * omega / (4.0 * b)).exp())
}

/// ∫_{ℝ^d} e^{i⟨w,z⟩} z^β e^{−b|z|²} dz.
pub fn center_ft_plus(beta: &[u32], b: f64, w: &[f64]) -> C {
    beta.iter()
        .zip(w)
        .map(|(&j, &wm)| gauss_moment_ft(j, b, -wm))
        .product()
}
