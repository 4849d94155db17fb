//! Floating-point scalar abstraction for the generic math kernels.
//!
//! Everything numeric in this crate is generic over [`Scalar`] so the same
//! formulas run in `f32` and `f64`. Tolerances are stated as `f64` constants
//! where they are used and converted via [`Scalar::c`].

use num_traits::{Float, FromPrimitive};

/// Scalar type of the rotation kernels: an IEEE float with `f64`-constant
/// conversion.
pub trait Scalar: Float + FromPrimitive + core::fmt::Debug + core::fmt::Display + 'static {
    /// Converts an `f64` constant into `Self` (lossy for `f32`).
    ///
    /// Panics only if the conversion is impossible, which cannot happen for
    /// the finite literals this crate feeds it.
    #[inline]
    fn c(value: f64) -> Self {
        Self::from_f64(value).expect("finite f64 constant converts into any Scalar")
    }

    /// `self` as `f64`, for error reporting (never used in math paths).
    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}
