//! Probability and binary raster masks.

use crate::error::Error;
use crate::raster::GeoTransform;
use crate::scalar::Scalar;
use crate::Result;

/// Per-pixel road probabilities in `[0, 1]`, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbabilityMask<S> {
    width: usize,
    height: usize,
    values: Vec<S>,
    pub geo: GeoTransform<S>,
}

impl<S: Scalar> ProbabilityMask<S> {
    pub fn new(width: usize, height: usize, values: Vec<S>, geo: GeoTransform<S>) -> Result<Self> {
        if values.len() != width * height {
            return Err(Error::Parse(format!(
                "probability mask needs {} values, got {}",
                width * height,
                values.len()
            )));
        }
        if values.iter().any(|v| *v < S::zero() || *v > S::one()) {
            return Err(Error::Parse("probability outside [0, 1]".into()));
        }
        Ok(ProbabilityMask {
            width,
            height,
            values,
            geo,
        })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn values(&self) -> &[S] {
        &self.values
    }

    pub fn value(&self, x: usize, y: usize) -> S {
        self.values[y * self.width + x]
    }

    /// Binarize: a pixel is set iff its value is strictly greater than
    /// `theta`. Total for any `theta`; callers pass `theta` in `[0, 1]`.
    pub fn threshold(&self, theta: S) -> BinaryMask<S> {
        debug_assert!(theta >= S::zero() && theta <= S::one());
        let bits = self.values.iter().map(|v| *v > theta).collect();
        BinaryMask {
            width: self.width,
            height: self.height,
            bits,
            geo: self.geo,
        }
    }
}

/// Per-pixel `{0, 1}` raster, row-major, with outside-the-raster reading
/// as 0.
#[derive(Debug, Clone, PartialEq)]
pub struct BinaryMask<S> {
    width: usize,
    height: usize,
    bits: Vec<bool>,
    pub geo: GeoTransform<S>,
}

impl<S: Scalar> BinaryMask<S> {
    /// All-zero mask.
    pub fn zeroed(width: usize, height: usize, geo: GeoTransform<S>) -> Self {
        BinaryMask {
            width,
            height,
            bits: vec![false; width * height],
            geo,
        }
    }

    pub fn from_bits(
        width: usize,
        height: usize,
        bits: Vec<bool>,
        geo: GeoTransform<S>,
    ) -> Result<Self> {
        if bits.len() != width * height {
            return Err(Error::Parse(format!(
                "binary mask needs {} bits, got {}",
                width * height,
                bits.len()
            )));
        }
        Ok(BinaryMask {
            width,
            height,
            bits,
            geo,
        })
    }

    /// Builds a small mask from rows of `0`/`1` characters (test fixtures).
    pub fn parse(rows: &[&str]) -> Self {
        let height = rows.len();
        let width = rows.first().map_or(0, |r| r.len());
        let mut bits = Vec::with_capacity(width * height);
        for row in rows {
            assert_eq!(row.len(), width, "ragged mask literal");
            bits.extend(row.chars().map(|c| c == '1'));
        }
        BinaryMask {
            width,
            height,
            bits,
            geo: GeoTransform::unit(),
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> bool {
        self.bits[y * self.width + x]
    }

    /// Signed-coordinate read; anything outside the raster is 0.
    #[inline]
    pub fn at(&self, x: isize, y: isize) -> bool {
        if x < 0 || y < 0 || x as usize >= self.width || y as usize >= self.height {
            false
        } else {
            self.bits[y as usize * self.width + x as usize]
        }
    }

    #[inline]
    pub fn set(&mut self, x: usize, y: usize, value: bool) {
        self.bits[y * self.width + x] = value;
    }

    pub fn count_ones(&self) -> usize {
        self.bits.iter().filter(|b| **b).count()
    }

    pub fn same_dimensions(&self, other: &Self) -> bool {
        self.width == other.width && self.height == other.height
    }

    /// Set-pixel coordinates in row-major order.
    pub fn set_pixels(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for y in 0..self.height {
            for x in 0..self.width {
                if self.get(x, y) {
                    out.push((x, y));
                }
            }
        }
        out
    }

    /// Is `self` a subset of `other` (same dimensions assumed)?
    pub fn subset_of(&self, other: &Self) -> bool {
        debug_assert!(self.same_dimensions(other));
        self.bits
            .iter()
            .zip(other.bits.iter())
            .all(|(a, b)| !*a || *b)
    }

    /// Content moved by (+dx, +dy); pixels shifted in from outside are 0.
    pub fn translated(&self, dx: isize, dy: isize) -> Self {
        let mut out = BinaryMask::zeroed(self.width, self.height, self.geo);
        for y in 0..self.height {
            for x in 0..self.width {
                if self.at(x as isize - dx, y as isize - dy) {
                    out.set(x, y, true);
                }
            }
        }
        out
    }

    /// Number of 8-connected components of set pixels.
    pub fn component_count_8(&self) -> usize {
        let mut seen = vec![false; self.bits.len()];
        let mut components = 0;
        let mut stack = Vec::new();
        for y in 0..self.height {
            for x in 0..self.width {
                let idx = y * self.width + x;
                if !self.bits[idx] || seen[idx] {
                    continue;
                }
                components += 1;
                seen[idx] = true;
                stack.push((x as isize, y as isize));
                while let Some((cx, cy)) = stack.pop() {
                    for dy in -1..=1isize {
                        for dx in -1..=1isize {
                            if dx == 0 && dy == 0 {
                                continue;
                            }
                            let (nx, ny) = (cx + dx, cy + dy);
                            if self.at(nx, ny) {
                                let nidx = ny as usize * self.width + nx as usize;
                                if !seen[nidx] {
                                    seen[nidx] = true;
                                    stack.push((nx, ny));
                                }
                            }
                        }
                    }
                }
            }
        }
        components
    }

    /// Count of set 8-neighbors of (x, y).
    pub fn neighbor_count(&self, x: usize, y: usize) -> usize {
        let (xi, yi) = (x as isize, y as isize);
        let mut n = 0;
        for dy in -1..=1isize {
            for dx in -1..=1isize {
                if (dx != 0 || dy != 0) && self.at(xi + dx, yi + dy) {
                    n += 1;
                }
            }
        }
        n
    }
}
