//! Scalar abstraction for the report math: `f32` or `f64`.

use core::fmt;

/// Floating-point scalar used by the gain and frequency reports.
pub trait Float:
    num_traits::Float + num_traits::FloatConst + num_traits::FromPrimitive + fmt::Debug + fmt::Display
{
}

impl Float for f32 {}
impl Float for f64 {}
