//! Scalar abstraction shared by every numerical routine in the crate.

use std::fmt::{Debug, Display};

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Real floating-point type the transforms are generic over (`f32` or `f64`).
pub trait Real:
    rustfft::FftNum + Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + Default
{
    /// Converts an `f64` literal. Total for both supported types.
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal is representable")
    }

    /// Converts an integer. Total for both supported types.
    fn from_int(x: i64) -> Self {
        Self::from_i64(x).expect("integer is representable")
    }

    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// `e^{iθ}`.
#[inline]
pub fn cis<T: Real>(theta: T) -> Complex<T> {
    Complex::new(theta.cos(), theta.sin())
}

/// `e^{iπx}`.
#[inline]
pub fn cis_pi<T: Real>(x: T) -> Complex<T> {
    cis(x * T::PI())
}

/// `e^{2iπ·r/n}` for an integer phase numerator, reduced modulo `n` first so
/// that large numerators keep full precision.
#[inline]
pub fn root_of_unity<T: Real>(r: i64, n: usize) -> Complex<T> {
    let n_i = n as i64;
    let r = r.rem_euclid(n_i);
    cis(T::lit(2.0) * T::PI() * T::from_int(r) / T::from_int(n_i))
}
