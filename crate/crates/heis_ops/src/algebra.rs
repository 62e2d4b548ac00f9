//! ℂ and ℍ as real algebras on coordinates (1, i) and (1, i, j, k).

use tengstrand::Field;

/// Product of two elements of 𝔽 in real coordinates.
pub fn mul(field: Field, x: &[f64], y: &[f64]) -> Vec<f64> {
    match field {
        Field::Complex => vec![x[0] * y[0] - x[1] * y[1], x[0] * y[1] + x[1] * y[0]],
        Field::Quaternionic => {
            let (a1, b1, c1, d1) = (x[0], x[1], x[2], x[3]);
            let (a2, b2, c2, d2) = (y[0], y[1], y[2], y[3]);
            vec![
                a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
                a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
                a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
                a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
            ]
        }
    }
}

pub fn conj(x: &[f64]) -> Vec<f64> {
    let mut out = x.to_vec();
    for c in out.iter_mut().skip(1) {
        *c = -*c;
    }
    out
}

/// Basis element e_l of 𝔽.
pub fn unit(field: Field, l: usize) -> Vec<f64> {
    let mut e = vec![0.0; field.dim()];
    e[l] = 1.0;
    e
}

/// Table c[l][l′][m] = Im(e_{l′} ē_l)_m, so that
/// Im(v ē_l)_m = Σ_{l′} c[l][l′][m] v_{l′}.
pub fn im_table(field: Field) -> Vec<Vec<Vec<f64>>> {
    let d = field.dim();
    (0..d)
        .map(|l| {
            let el_bar = conj(&unit(field, l));
            (0..d)
                .map(|lp| mul(field, &unit(field, lp), &el_bar)[1..].to_vec())
                .collect()
        })
        .collect()
}
