//! Scalar abstraction shared by every numeric routine.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Floating point type the geometry is generic over.
pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + Default + Send + Sync + 'static
{
    /// Tolerance used for "is zero" decisions on O(1) quantities.
    fn zero_tol() -> Self;
    /// Looser tolerance for quantities that went through a chain of isometries.
    fn geom_tol() -> Self;

    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("representable literal")
    }
}

impl Real for f64 {
    fn zero_tol() -> Self {
        1e-9
    }
    fn geom_tol() -> Self {
        1e-7
    }
}

impl Real for f32 {
    fn zero_tol() -> Self {
        1e-4
    }
    fn geom_tol() -> Self {
        1e-3
    }
}
