//! Vector-to-raster conversion for label masks and synthetic scenes.

use crate::geometry::{point_segment_distance, Point2};
use crate::graph::RoadGraph;
use crate::raster::{BinaryMask, GeoTransform};
use crate::scalar::Scalar;

/// Burns a road graph into a binary mask: a pixel is set iff its center lies
/// within `buffer` world units of any edge polyline. No anti-aliasing.
pub fn rasterize_graph<S: Scalar>(
    graph: &RoadGraph<S>,
    geo: &GeoTransform<S>,
    width: usize,
    height: usize,
    buffer: S,
) -> BinaryMask<S> {
    debug_assert!(buffer >= S::zero());
    let mut mask = BinaryMask::zeroed(width, height, *geo);
    for edge in &graph.edges {
        for seg in edge.polyline.windows(2) {
            stamp_segment(&mut mask, geo, seg[0], seg[1], buffer);
        }
    }
    mask
}

/// Sets every pixel whose center is within `buffer` of segment [a, b],
/// scanning only the segment's inflated bounding box.
fn stamp_segment<S: Scalar>(
    mask: &mut BinaryMask<S>,
    geo: &GeoTransform<S>,
    a: Point2<S>,
    b: Point2<S>,
    buffer: S,
) {
    // half a pixel of slack so centers at the box edge are not missed
    let pad_x = buffer + geo.pixel_size_x;
    let pad_y = buffer + geo.pixel_size_y;
    let min = Point2::new(a.x.min(b.x) - pad_x, a.y.min(b.y) - pad_y);
    let max = Point2::new(a.x.max(b.x) + pad_x, a.y.max(b.y) + pad_y);
    // y grows downward in pixel space
    let (col_min, row_min) = geo.world_to_pixel(Point2::new(min.x, max.y));
    let (col_max, row_max) = geo.world_to_pixel(Point2::new(max.x, min.y));
    let col_lo = col_min.max(0) as usize;
    let row_lo = row_min.max(0) as usize;
    if col_max < 0 || row_max < 0 {
        return;
    }
    let col_hi = (col_max as usize).min(mask.width().saturating_sub(1));
    let row_hi = (row_max as usize).min(mask.height().saturating_sub(1));
    if col_lo > col_hi || row_lo > row_hi || mask.width() == 0 || mask.height() == 0 {
        return;
    }
    for row in row_lo..=row_hi {
        for col in col_lo..=col_hi {
            if mask.get(col, row) {
                continue;
            }
            let center = geo.pixel_center(col, row);
            if point_segment_distance(center, a, b) <= buffer {
                mask.set(col, row, true);
            }
        }
    }
}
