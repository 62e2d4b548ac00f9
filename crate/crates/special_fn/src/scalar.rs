use num_complex::Complex;
use num_traits::{Float, FloatConst};
use std::fmt::Debug;

/// Real scalar the special-function layer is written against.
pub trait Real: Float + FloatConst + Debug + Default + Send + Sync + 'static {}

impl<T: Float + FloatConst + Debug + Default + Send + Sync + 'static> Real for T {}

/// Working precision of the verification pipelines.
pub type R = f64;
/// Complex numbers at working precision.
pub type C64 = Complex<R>;

/// Lossless-enough conversion of an `f64` literal into `T`.
#[inline]
pub fn cst<T: Real>(x: f64) -> T {
    T::from(x).expect("f64 literal representable in scalar type")
}
