//! Axis-aligned affine mapping between pixel indices and world coordinates.

use crate::geometry::Point2;
use crate::scalar::Scalar;

/// Pixel-to-world transform with positive pixel sizes and downward y: row 0
/// is the northernmost row, `origin` is the outer corner of pixel (0, 0).
///
/// No rotation term; rotated geotransforms are out of scope.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeoTransform<S> {
    pub origin_x: S,
    pub origin_y: S,
    pub pixel_size_x: S,
    pub pixel_size_y: S,
}

impl<S: Scalar> GeoTransform<S> {
    /// Panics if a pixel size is not strictly positive.
    pub fn new(origin_x: S, origin_y: S, pixel_size_x: S, pixel_size_y: S) -> Self {
        assert!(
            pixel_size_x > S::zero() && pixel_size_y > S::zero(),
            "pixel sizes must be positive"
        );
        GeoTransform {
            origin_x,
            origin_y,
            pixel_size_x,
            pixel_size_y,
        }
    }

    /// Identity-ish transform: 1 world unit per pixel, origin at (0, 0).
    pub fn unit() -> Self {
        GeoTransform::new(S::zero(), S::zero(), S::one(), S::one())
    }

    /// World coordinates of the center of pixel (col, row).
    pub fn pixel_center(&self, col: usize, row: usize) -> Point2<S> {
        let half = S::of(0.5);
        Point2::new(
            self.origin_x + (S::of(col as f64) + half) * self.pixel_size_x,
            self.origin_y - (S::of(row as f64) + half) * self.pixel_size_y,
        )
    }

    /// Fractional pixel coordinates (col, row) of a world point; the center
    /// of pixel (c, r) maps to (c + 0.5, r + 0.5).
    pub fn world_to_pixel_f(&self, p: Point2<S>) -> (S, S) {
        (
            (p.x - self.origin_x) / self.pixel_size_x,
            (self.origin_y - p.y) / self.pixel_size_y,
        )
    }

    /// Integer pixel containing a world point (floor of the fractional
    /// coordinates); may fall outside a raster's bounds.
    pub fn world_to_pixel(&self, p: Point2<S>) -> (i64, i64) {
        let (c, r) = self.world_to_pixel_f(p);
        (
            c.floor().to_i64().unwrap_or(i64::MAX),
            r.floor().to_i64().unwrap_or(i64::MAX),
        )
    }
}

impl<S: Scalar> Default for GeoTransform<S> {
    fn default() -> Self {
        GeoTransform::unit()
    }
}
