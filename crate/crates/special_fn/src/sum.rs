//! Compensated summation and a deterministic parallel map-sum.

use num_complex::Complex;
use rayon::prelude::*;

/// Neumaier's variant of Kahan summation.
#[derive(Debug, Clone, Copy, Default)]
pub struct Neumaier {
    sum: f64,
    comp: f64,
}

impl Neumaier {
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn total(&self) -> f64 {
        self.sum + self.comp
    }
}

/// Complex compensated accumulator.
#[derive(Debug, Clone, Copy, Default)]
pub struct NeumaierC {
    re: Neumaier,
    im: Neumaier,
}

impl NeumaierC {
    pub fn add(&mut self, z: Complex<f64>) {
        self.re.add(z.re);
        self.im.add(z.im);
    }

    pub fn total(&self) -> Complex<f64> {
        Complex::new(self.re.total(), self.im.total())
    }
}

pub fn neumaier_sum<I: IntoIterator<Item = f64>>(it: I) -> f64 {
    let mut acc = Neumaier::default();
    for x in it {
        acc.add(x);
    }
    acc.total()
}

pub fn neumaier_sum_c<I: IntoIterator<Item = Complex<f64>>>(it: I) -> Complex<f64> {
    let mut acc = NeumaierC::default();
    for z in it {
        acc.add(z);
    }
    acc.total()
}

/// Parallel map followed by an ordered compensated sum, so the result does
/// not depend on the thread count.
pub fn par_map_sum<T, F>(items: &[T], f: F) -> Complex<f64>
where
    T: Sync,
    F: Fn(&T) -> Complex<f64> + Sync + Send,
{
    let parts: Vec<Complex<f64>> = items.par_iter().map(f).collect();
    neumaier_sum_c(parts)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compensated_beats_naive() {
        let xs = [1.0, 1e100, 1.0, -1e100];
        assert_eq!(neumaier_sum(xs), 2.0);
    }
}
