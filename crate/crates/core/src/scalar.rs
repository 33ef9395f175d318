//! Floating-point abstraction shared by every evaluator.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Real scalar the means are evaluated in: `f32` or `f64`.
pub trait Scalar: Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + Send + Sync + 'static {
    /// Relative parameter gap below which a 0/0 quotient is replaced by its limit.
    fn branch_delta() -> Self;

    /// Largest exponent product |t·ln(max/min)| accepted before a saturation error.
    fn saturation_log() -> Self;

    /// Lossless-enough conversion of a literal.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("literal representable in scalar type")
    }

    #[inline]
    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for f64 {
    fn branch_delta() -> Self {
        1e-6
    }

    fn saturation_log() -> Self {
        700.0
    }
}

impl Scalar for f32 {
    fn branch_delta() -> Self {
        1e-4
    }

    fn saturation_log() -> Self {
        85.0
    }
}
