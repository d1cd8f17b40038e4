//! Floating point scalars the numerical paths are generic over.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive};

/// Real scalar used by every floating point routine in the crate (`f32` or `f64`).
///
/// The tolerance hooks scale the numerical thresholds to the precision of the
/// type; the `f64` values are the reference ones.
pub trait Real:
    Float + FloatConst + FromPrimitive + Debug + Display + Default + Send + Sync + 'static
{
    /// Unitarity, anti-Hermitian and determinant checks.
    fn group_tol() -> Self;
    /// Relative bracket-vanishing threshold (scaled by `|X| |Y|`).
    fn bracket_tol() -> Self;
    /// Horizontality residual threshold.
    fn horiz_tol() -> Self;
    /// Margin for "range brackets zero" decisions.
    fn margin() -> Self;
    /// Relative singular-value cut for rank decisions.
    fn rank_tol() -> Self;

    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("literal representable")
    }
}

impl Real for f64 {
    fn group_tol() -> Self {
        1e-10
    }
    fn bracket_tol() -> Self {
        1e-9
    }
    fn horiz_tol() -> Self {
        1e-8
    }
    fn margin() -> Self {
        1e-8
    }
    fn rank_tol() -> Self {
        1e-9
    }
}

impl Real for f32 {
    fn group_tol() -> Self {
        1e-4
    }
    fn bracket_tol() -> Self {
        1e-4
    }
    fn horiz_tol() -> Self {
        1e-3
    }
    fn margin() -> Self {
        1e-3
    }
    fn rank_tol() -> Self {
        1e-4
    }
}
