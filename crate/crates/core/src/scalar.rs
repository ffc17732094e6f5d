//! Scalar abstraction shared by every numeric routine in the crate.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive};

/// Real floating-point scalar the algorithms are written against.
///
/// Implemented for `f32` and `f64`. Tolerances quoted for double precision
/// are lifted to a small multiple of machine epsilon when the scalar cannot
/// resolve them, see [`Real::tol`].
pub trait Real:
    Float + FloatConst + FromPrimitive + Debug + Display + Default + Send + Sync + 'static
{
    /// Converts an `f64` literal into the scalar type.
    #[inline]
    fn lit(v: f64) -> Self {
        Self::from_f64(v).expect("f64 literal representable in scalar type")
    }

    /// A tolerance of `nominal`, floored at 64 ulps of one.
    #[inline]
    fn tol(nominal: f64) -> Self {
        Self::lit(nominal).max(Self::epsilon() * Self::lit(64.0))
    }

    /// Lossy widening used for reporting.
    #[inline]
    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f32 {}
impl Real for f64 {}
