//! Scalar abstraction: the field arithmetic is written once, generically.

use num_traits::{Float, FloatConst, FromPrimitive};

/// Floating-point scalar usable for spectral computation: `f32` or `f64`.
pub trait Real: Float + FloatConst + FromPrimitive + rustfft::FftNum + std::fmt::Display {}

impl Real for f32 {}
impl Real for f64 {}

/// Shorthand for converting an `f64` constant into the working scalar.
///
/// Panics only if the target type cannot represent any `f64` at all, which
/// cannot happen for `f32`/`f64`.
#[inline]
pub fn real<T: Real>(x: f64) -> T {
    T::from_f64(x).expect("f64 constant convertible to scalar type")
}

/// Converts an integer frequency into the working scalar exactly.
#[inline]
pub fn real_from_i64<T: Real>(n: i64) -> T {
    T::from_i64(n).expect("integer frequency convertible to scalar type")
}
