//! Scalar abstraction shared by every module.
//!
//! All geometry is generic over a floating-point coordinate type. `f64` is the
//! workhorse; `f32` is supported for small integer-valued inputs.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Absolute tolerance, in radians, used when snapping angles onto cone rays.
pub const ANGLE_TOL: f64 = 1e-12;

/// Tolerance, in radians, for sector membership and ray consistency checks.
pub const SECTOR_TOL: f64 = 1e-9;

/// Relative tolerance for distance comparisons (stretch, per-step decrease,
/// oracle agreement, near-tie detection).
pub const REL_TOL: f64 = 1e-9;

/// Floating-point coordinate type: `f32` or `f64`.
pub trait Scalar:
    Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + Default + Send + Sync + 'static
{
    /// Converts from `f64`, saturating to infinity if out of range.
    fn of(v: f64) -> Self {
        Self::from_f64(v).unwrap_or_else(Self::infinity)
    }

    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    /// `ANGLE_TOL`, widened to the type's resolution at angles near 2π.
    fn angle_tol() -> Self {
        Self::of(ANGLE_TOL).max(Self::epsilon() * Self::of(64.0))
    }

    fn sector_tol() -> Self {
        Self::of(SECTOR_TOL).max(Self::epsilon() * Self::of(256.0))
    }

    fn rel_tol() -> Self {
        Self::of(REL_TOL).max(Self::epsilon() * Self::of(64.0))
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}
