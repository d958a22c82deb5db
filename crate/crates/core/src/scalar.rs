//! Scalar abstraction shared by every model in the crate.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Real scalar the models are generic over: `f32` or `f64`.
pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + Default + Send + Sync + 'static
{
    /// Tolerance used when validating probability normalization.
    fn normalization_tol() -> Self;

    /// Converts an `f64` literal into the scalar type.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable in scalar type")
    }

    /// Lossy conversion used for error payloads and diagnostics.
    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f32 {
    fn normalization_tol() -> Self {
        1e-5
    }
}

impl Real for f64 {
    fn normalization_tol() -> Self {
        1e-12
    }
}

/// `x ln x` with the continuous extension `0 ln 0 = 0`.
#[inline]
pub(crate) fn x_ln_x<T: Real>(x: T) -> T {
    if x <= T::zero() {
        T::zero()
    } else {
        x * x.ln()
    }
}
