//! Binary morphology with a square (Chebyshev) structuring element.
//!
//! The structuring element of radius `r` is the (2r+1)x(2r+1) square, which
//! separates into a horizontal and a vertical 1-D window. Pixels outside the
//! raster read as 0 for both dilation and erosion, so erosion eats into the
//! raster border.

use crate::raster::BinaryMask;
use crate::scalar::Scalar;

fn window_pass<S: Scalar>(
    mask: &BinaryMask<S>,
    radius: usize,
    horizontal: bool,
    all: bool,
) -> BinaryMask<S> {
    let (w, h) = (mask.width(), mask.height());
    let mut out = BinaryMask::zeroed(w, h, mask.geo);
    let r = radius as isize;
    let span = 2 * r + 1;
    let (outer, inner) = if horizontal { (h, w) } else { (w, h) };
    // prefix[i] = number of set pixels among the first i of the line
    let mut prefix = vec![0u32; inner + 1];
    for o in 0..outer {
        for i in 0..inner {
            let set = if horizontal {
                mask.get(i, o)
            } else {
                mask.get(o, i)
            };
            prefix[i + 1] = prefix[i] + u32::from(set);
        }
        for i in 0..inner {
            let lo = i as isize - r;
            let hi = i as isize + r;
            let clamped_lo = lo.max(0) as usize;
            let clamped_hi = hi.min(inner as isize - 1) as usize;
            let count = prefix[clamped_hi + 1] - prefix[clamped_lo];
            let value = if all {
                // erosion: the full window must be set, and a window that
                // sticks out of the raster sees a 0 there
                lo >= 0 && hi < inner as isize && count as isize == span
            } else {
                count > 0
            };
            if value {
                if horizontal {
                    out.set(i, o, true);
                } else {
                    out.set(o, i, true);
                }
            }
        }
    }
    out
}

/// A pixel is set iff any input pixel within Chebyshev distance `radius`
/// is set.
pub fn dilate<S: Scalar>(mask: &BinaryMask<S>, radius: usize) -> BinaryMask<S> {
    if radius == 0 {
        return mask.clone();
    }
    let horizontal = window_pass(mask, radius, true, false);
    window_pass(&horizontal, radius, false, false)
}

/// A pixel is set iff all input pixels within Chebyshev distance `radius`
/// are set (reading outside the raster as 0).
pub fn erode<S: Scalar>(mask: &BinaryMask<S>, radius: usize) -> BinaryMask<S> {
    if radius == 0 {
        return mask.clone();
    }
    let horizontal = window_pass(mask, radius, true, true);
    window_pass(&horizontal, radius, false, true)
}

/// Morphological opening: erosion then dilation with the same radius.
pub fn open<S: Scalar>(mask: &BinaryMask<S>, radius: usize) -> BinaryMask<S> {
    dilate(&erode(mask, radius), radius)
}
