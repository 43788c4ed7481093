//! Scalar abstractions.
//!
//! Classification and ordering only need an ordered field, so they are
//! written against [`Field`] and run unchanged over `f32`, `f64` and exact
//! rationals. Anything involving square roots or trigonometry (frames in
//! obstacle-pair mode, clearances, trajectories) needs [`Real`].

use std::fmt::{Debug, Display};
use std::ops::Neg;

use num_traits::{Float, FloatConst, FromPrimitive, Num, ToPrimitive};

/// An ordered field: enough structure to project, compare and subtract.
pub trait Field: Clone + PartialOrd + Debug + Num + Neg<Output = Self> {}

impl<T> Field for T where T: Clone + PartialOrd + Debug + Num + Neg<Output = Self> {}

/// Floating point scalars used for trajectory synthesis: `f32` or `f64`.
pub trait Real:
    Field + Float + FloatConst + FromPrimitive + ToPrimitive + Display + Send + Sync + 'static
{
    /// Lossy conversion from `f64`, used for literals and rational time bounds.
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("finite literal")
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// `|x|` without requiring `Signed` (which collides with `Float::abs`).
pub fn abs<T: Field>(x: T) -> T {
    if x < T::zero() {
        -x
    } else {
        x
    }
}

/// Smaller of two partially ordered values; `a` wins ties and NaN comparisons.
pub fn min<T: Field>(a: T, b: T) -> T {
    if b < a {
        b
    } else {
        a
    }
}
