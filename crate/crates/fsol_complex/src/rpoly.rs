//! Exact rational polynomials for the jet weights of the corrected pairing.
//!
//! Integrating the kernel against the Taylor part of Nf in closed form
//! leaves, for each jet order l, a rational weight in w = r² on (0, 1)
//! whose singular part at w = 1 cancels exactly. R_l is what remains
//! after dividing out (1−w)ⁿ and the Taylor block of (1+w)^{−(l+1)}.

use num_rational::Ratio;
use special_fn::combin::binom;

type Q = Ratio<i128>;

fn q(x: i128) -> Q {
    Q::from_integer(x)
}

fn mul(a: &[Q], b: &[Q]) -> Vec<Q> {
    let mut r = vec![q(0); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            r[i + j] += x * y;
        }
    }
    r
}

fn pow(a: &[Q], k: usize) -> Vec<Q> {
    (0..k).fold(vec![q(1)], |acc, _| mul(&acc, a))
}

fn sub_into(a: &mut Vec<Q>, b: &[Q]) {
    if a.len() < b.len() {
        a.resize(b.len(), q(0));
    }
    for (x, y) in a.iter_mut().zip(b) {
        *x -= y;
    }
}

/// Quotient of an exact division; None if the remainder is nonzero.
fn div_exact(num: &[Q], den: &[Q]) -> Option<Vec<Q>> {
    let mut num = num.to_vec();
    let lead = *den.last()?;
    if num.len() < den.len() {
        return num.iter().all(|x| *x == q(0)).then(Vec::new);
    }
    let mut out = vec![q(0); num.len() - den.len() + 1];
    for i in (0..out.len()).rev() {
        let c = num[i + den.len() - 1] / lead;
        out[i] = c;
        for (j, d) in den.iter().enumerate() {
            num[i + j] -= c * d;
        }
    }
    num.iter().all(|x| *x == q(0)).then_some(out)
}

fn binom_q(a: usize, b: usize) -> Q {
    q(binom(a as i64, b as i64).round() as i128)
}

/// R_l for n, as f64 coefficients (lowest first).
pub fn r_poly(n: usize, l: usize) -> Vec<f64> {
    let om = [q(1), q(-1)];
    let op = [q(1), q(1)];
    let mut lead = vec![q(0); n - 1];
    lead.push(q(1i128 << (l + 1)));
    let mut br = mul(&lead, &pow(&om, l + 1));
    let half = Q::new(-1, 2);
    for i in l..=n - 2 {
        let mut t = vec![q(0); n - 2 - i];
        let mut c = binom_q(i, l);
        for _ in l..i {
            c *= half;
        }
        t.push(c);
        let t = mul(&mul(&t, &pow(&om, i + 1)), &pow(&op, l + 1));
        sub_into(&mut br, &t);
    }
    if (n - 1) % 2 == 1 {
        for x in br.iter_mut() {
            *x = -*x;
        }
    }
    let qp = div_exact(&br, &pow(&om, n)).expect("(1-w)^n divides the jet numerator");
    let inv: Vec<Q> = (0..n - 1)
        .map(|i| if i % 2 == 0 { binom_q(l + i, i) } else { -binom_q(l + i, i) })
        .collect();
    let mut taylor = mul(&qp, &inv);
    taylor.truncate(n - 1);
    let mut num = qp.clone();
    sub_into(&mut num, &mul(&pow(&op, l + 1), &taylor));
    debug_assert!(num.iter().take(n - 1).all(|x| *x == q(0)));
    num.iter()
        .skip(n - 1)
        .map(|x| *x.numer() as f64 / *x.denom() as f64)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_for_small_n() {
        for n in 2..=7 {
            for l in 0..=n - 2 {
                let r = r_poly(n, l);
                assert!(r.iter().all(|x| x.is_finite()));
            }
        }
    }
}
