//! Scalar abstraction shared by every numeric routine in the crate.

use std::fmt::{Debug, Display};
use std::iter::Sum;
use std::str::FromStr;

use num_traits::{Float, FromPrimitive, NumAssign};

/// Floating point scalar: `f32` or `f64`.
///
/// `Display`/`FromStr` must round-trip exactly; the log format relies on it.
pub trait Scalar:
    Float + FromPrimitive + NumAssign + Sum + Display + Debug + FromStr + Default + Send + Sync + 'static
{
    /// Lossy conversion from an `f64` literal or sampled value.
    fn of(value: f64) -> Self {
        Self::from_f64(value).expect("f64 converts to any float scalar")
    }

    fn of_usize(value: usize) -> Self {
        Self::from_usize(value).expect("usize converts to any float scalar")
    }

    fn as_f64(self) -> f64 {
        self.to_f64().expect("float scalar converts to f64")
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}

/// Relative tolerance used when checking that a propensity equals `1/K`.
pub(crate) fn uniform_tolerance<S: Scalar>() -> S {
    S::epsilon().sqrt()
}
