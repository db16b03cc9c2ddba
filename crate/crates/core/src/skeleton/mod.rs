//! Thinning of binary masks and tracing of skeletons into road graphs.

mod extract;
mod thin;

pub use extract::{extract_graph, extract_graph_pruned};
pub use thin::skeletonize;

use crate::raster::BinaryMask;
use crate::scalar::Scalar;

/// A binary mask constrained to one-pixel width: no fully set 2x2 block
/// anywhere, same 8-connected component count as its source mask.
#[derive(Debug, Clone, PartialEq)]
pub struct Skeleton<S> {
    mask: BinaryMask<S>,
}

impl<S: Scalar> Skeleton<S> {
    /// Wraps a mask without checking the width invariant. Intended for
    /// skeletons produced by [`skeletonize`] or already-thin test fixtures.
    pub fn from_mask_unchecked(mask: BinaryMask<S>) -> Self {
        Skeleton { mask }
    }

    pub fn mask(&self) -> &BinaryMask<S> {
        &self.mask
    }

    pub fn into_mask(self) -> BinaryMask<S> {
        self.mask
    }

    /// Returns the top-left corner of the first fully set 2x2 block, if the
    /// width invariant is violated.
    pub fn find_thick_block(&self) -> Option<(usize, usize)> {
        let m = &self.mask;
        for y in 0..m.height().saturating_sub(1) {
            for x in 0..m.width().saturating_sub(1) {
                if m.get(x, y) && m.get(x + 1, y) && m.get(x, y + 1) && m.get(x + 1, y + 1) {
                    return Some((x, y));
                }
            }
        }
        None
    }
}
