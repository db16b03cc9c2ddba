//! Grid-summed change heatmap.

use crate::raster::BinaryMask;
use crate::scalar::Scalar;

/// Per-cell counts of set difference pixels over a fixed-size grid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeatmapGrid {
    pub cell_size: usize,
    pub rows: usize,
    pub cols: usize,
    /// Row-major cell sums; each is at most `cell_size^2`.
    pub sums: Vec<u32>,
}

impl HeatmapGrid {
    pub fn sum(&self, row: usize, col: usize) -> u32 {
        self.sums[row * self.cols + col]
    }

    pub fn total(&self) -> u64 {
        self.sums.iter().map(|s| u64::from(*s)).sum()
    }

    pub fn max(&self) -> u32 {
        self.sums.iter().copied().max().unwrap_or(0)
    }

    /// Cell with the largest sum, row-major first on ties.
    pub fn argmax(&self) -> Option<(usize, usize)> {
        if self.sums.is_empty() {
            return None;
        }
        let (idx, _) = self
            .sums
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(&a.0)))
            .unwrap();
        Some((idx / self.cols, idx % self.cols))
    }
}

/// Sums set pixels per `cell_size` x `cell_size` grid cell; edge cells may
/// be smaller.
pub fn heatmap<S: Scalar>(diff: &BinaryMask<S>, cell_size: usize) -> HeatmapGrid {
    assert!(cell_size >= 1, "cell_size must be at least 1");
    let rows = diff.height().div_ceil(cell_size);
    let cols = diff.width().div_ceil(cell_size);
    let mut sums = vec![0u32; rows * cols];
    for y in 0..diff.height() {
        for x in 0..diff.width() {
            if diff.get(x, y) {
                sums[(y / cell_size) * cols + (x / cell_size)] += 1;
            }
        }
    }
    HeatmapGrid {
        cell_size,
        rows,
        cols,
        sums,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::raster::GeoTransform;
    use proptest::prelude::*;

    type Mask = BinaryMask<f64>;

    #[test]
    fn full_mask_interior_cells_sum_to_cell_area() {
        let bits = vec![true; 35 * 25];
        let m = Mask::from_bits(35, 25, bits, GeoTransform::unit()).unwrap();
        let grid = heatmap(&m, 10);
        assert_eq!((grid.rows, grid.cols), (3, 4));
        assert_eq!(grid.sum(0, 0), 100);
        assert_eq!(grid.sum(1, 2), 100);
        // edge cells are clipped: 5 wide and/or 5 tall
        assert_eq!(grid.sum(0, 3), 50);
        assert_eq!(grid.sum(2, 3), 25);
        assert_eq!(grid.total(), 35 * 25);
    }

    #[test]
    fn empty_mask_is_all_zero() {
        let m = Mask::zeroed(30, 30, GeoTransform::unit());
        let grid = heatmap(&m, 10);
        assert!(grid.sums.iter().all(|s| *s == 0));
    }

    #[test]
    fn cluster_lands_in_argmax_cell() {
        let mut m = Mask::zeroed(50, 50, GeoTransform::unit());
        for y in 31..36 {
            for x in 12..17 {
                m.set(x, y, true);
            }
        }
        m.set(2, 2, true); // a stray pixel elsewhere
        let grid = heatmap(&m, 10);
        assert_eq!(grid.argmax(), Some((3, 1)));
        assert_eq!(grid.sum(3, 1), 25);
    }

    proptest! {
        // total over cells equals the mask popcount
        #[test]
        fn totals_match_popcount(
            bits in proptest::collection::vec(any::<bool>(), 37 * 23),
            cell in 1usize..12,
        ) {
            let m = Mask::from_bits(37, 23, bits, GeoTransform::unit()).unwrap();
            let grid = heatmap(&m, cell);
            prop_assert_eq!(grid.total(), m.count_ones() as u64);
            prop_assert!(grid.sums.iter().all(|s| *s as usize <= cell * cell));
        }
    }
}
