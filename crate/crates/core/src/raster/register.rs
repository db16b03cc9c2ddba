//! Translation-only mask registration by exhaustive overlap correlation.

use crate::error::Error;
use crate::raster::BinaryMask;
use crate::scalar::Scalar;
use crate::Result;

/// Estimated pixel shift between two masks.
///
/// `(dx, dy)` is the content displacement from `pre` to `post`: the best
/// alignment satisfies `post(p) ~= pre(p - (dx, dy))`. Shifting the post
/// mask by `(-dx, -dy)` brings it onto the pre frame.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PixelOffset {
    pub dx: i64,
    pub dy: i64,
    /// Number of jointly set pixels at the best shift.
    pub score: u64,
}

/// Finds the shift in `[-search_radius, search_radius]^2` maximizing the
/// count of pixels set in both masks over the valid overlap.
///
/// For binary masks this count is normalized cross-correlation up to a
/// constant factor. Ties are broken by smallest `|dx| + |dy|`, then by
/// lexicographic `(dy, dx)`.
pub fn register<S: Scalar>(
    pre: &BinaryMask<S>,
    post: &BinaryMask<S>,
    search_radius: usize,
) -> Result<PixelOffset> {
    if !pre.same_dimensions(post) {
        return Err(Error::DimensionMismatch(
            pre.width(),
            pre.height(),
            post.width(),
            post.height(),
        ));
    }
    let post_pixels = post.set_pixels();
    if post_pixels.is_empty() || pre.count_ones() == 0 {
        return Err(Error::NoSignal);
    }

    let r = search_radius as i64;
    let mut best: Option<PixelOffset> = None;
    for dy in -r..=r {
        for dx in -r..=r {
            let mut score = 0u64;
            for &(x, y) in &post_pixels {
                if pre.at(x as isize - dx as isize, y as isize - dy as isize) {
                    score += 1;
                }
            }
            let candidate = PixelOffset { dx, dy, score };
            let better = match best {
                None => true,
                Some(b) => {
                    score > b.score
                        || (score == b.score
                            && (manhattan(candidate) < manhattan(b)
                                || (manhattan(candidate) == manhattan(b)
                                    && (dy, dx) < (b.dy, b.dx))))
                }
            };
            if better {
                best = Some(candidate);
            }
        }
    }
    Ok(best.expect("search space is never empty"))
}

fn manhattan(o: PixelOffset) -> i64 {
    o.dx.abs() + o.dy.abs()
}
