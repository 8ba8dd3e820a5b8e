//! Scalar abstraction: the estimators work for any IEEE float width.

use std::fmt;

use num_traits::{Float, FromPrimitive, ToPrimitive};

/// Floating-point scalar the estimators are generic over: `f32` or `f64`.
///
/// The crate root exports `f64` aliases for every public type; use those
/// unless you specifically need single precision.
pub trait Real: Float + FromPrimitive + ToPrimitive + fmt::Debug + fmt::Display {
    /// Lossy view for diagnostics and error payloads.
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    /// Conversion from an `f64` constant. Total for `f32` and `f64`.
    fn from_f64_lossy(value: f64) -> Self {
        Self::from_f64(value).expect("float-to-float conversion is total")
    }

    /// Conversion from an integer count (citations, trainings).
    fn from_count(count: u64) -> Self {
        Self::from_u64(count).expect("u64-to-float conversion is total")
    }
}

impl Real for f32 {}
impl Real for f64 {}
