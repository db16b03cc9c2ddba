//! Floating point scalar abstraction for world-unit math.

use num_traits::{Float, FromPrimitive, ToPrimitive};

/// Scalar type for world coordinates, lengths and costs: `f32` or `f64`.
pub trait Scalar:
    Float + FromPrimitive + ToPrimitive + std::fmt::Debug + std::fmt::Display + Default + Send + Sync + 'static
{
    /// Convert an `f64` constant or config value into this scalar.
    fn of(value: f64) -> Self {
        Self::from_f64(value).expect("finite f64 converts to scalar")
    }

    /// Widen to `f64` for reports and serialization.
    fn widen(self) -> f64 {
        self.to_f64().expect("scalar converts to f64")
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}
