//! Mask differencing and noise cleanup for change detection.

use crate::error::Error;
use crate::raster::{erode, open, BinaryMask};
use crate::scalar::Scalar;
use crate::Result;

/// Change mask: a pixel is set iff it is set in `pre` and unset in `post`
/// (road existed before, absent after). The masks must share dimensions and
/// already be co-registered; the result carries `pre`'s geotransform.
pub fn diff_masks<S: Scalar>(
    pre: &BinaryMask<S>,
    post: &BinaryMask<S>,
) -> Result<BinaryMask<S>> {
    if !pre.same_dimensions(post) {
        return Err(Error::DimensionMismatch(
            pre.width(),
            pre.height(),
            post.width(),
            post.height(),
        ));
    }
    let bits = pre
        .bits()
        .iter()
        .zip(post.bits().iter())
        .map(|(p, q)| *p && !*q)
        .collect();
    BinaryMask::from_bits(pre.width(), pre.height(), bits, pre.geo)
}

/// Removes difference features thinner than `min_width` pixels (registration
/// slivers), then opens with radius 1 to drop residual specks.
///
/// The output is always a subset of the input.
pub fn clean_diff<S: Scalar>(diff: &BinaryMask<S>, min_width: usize) -> BinaryMask<S> {
    debug_assert!(min_width >= 1);
    let eroded = erode(diff, min_width / 2);
    open(&eroded, 1)
}
