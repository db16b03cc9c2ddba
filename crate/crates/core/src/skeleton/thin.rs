//! Two-subiteration morphological thinning.
//!
//! Candidate pixels are selected per subiteration on a frozen image, then
//! deleted one at a time with the conditions re-checked against the current
//! image. Deleting only pixels whose neighborhood crossing number is 1 (and
//! that have a background 4-neighbor) never merges, splits or closes a
//! foreground region, so the 8-connected component count of the input is
//! preserved exactly. A final pass collapses residual fully set 2x2 blocks
//! the subiterations are allowed to leave behind.

use crate::raster::BinaryMask;
use crate::scalar::Scalar;
use crate::skeleton::Skeleton;

/// Neighbor values clockwise from north: N, NE, E, SE, S, SW, W, NW.
#[inline]
fn ring<S: Scalar>(m: &BinaryMask<S>, x: usize, y: usize) -> [bool; 8] {
    let (x, y) = (x as isize, y as isize);
    [
        m.at(x, y - 1),
        m.at(x + 1, y - 1),
        m.at(x + 1, y),
        m.at(x + 1, y + 1),
        m.at(x, y + 1),
        m.at(x - 1, y + 1),
        m.at(x - 1, y),
        m.at(x - 1, y - 1),
    ]
}

#[inline]
fn set_count(ring: &[bool; 8]) -> usize {
    ring.iter().filter(|b| **b).count()
}

/// Number of 0 -> 1 transitions walking the ring once.
#[inline]
fn crossings(ring: &[bool; 8]) -> usize {
    let mut n = 0;
    for i in 0..8 {
        if !ring[i] && ring[(i + 1) % 8] {
            n += 1;
        }
    }
    n
}

#[derive(Clone, Copy, PartialEq)]
enum Subpass {
    First,
    Second,
}

fn deletable<S: Scalar>(m: &BinaryMask<S>, x: usize, y: usize, pass: Subpass) -> bool {
    if !m.get(x, y) {
        return false;
    }
    let r = ring(m, x, y);
    let b = set_count(&r);
    if !(2..=6).contains(&b) || crossings(&r) != 1 {
        return false;
    }
    let (n, e, s, w) = (r[0], r[2], r[4], r[6]);
    match pass {
        Subpass::First => !(n && e && s) && !(e && s && w),
        Subpass::Second => !(n && e && w) && !(n && s && w),
    }
}

fn subiteration<S: Scalar>(m: &mut BinaryMask<S>, pass: Subpass) -> usize {
    let mut candidates = Vec::new();
    for y in 0..m.height() {
        for x in 0..m.width() {
            if deletable(m, x, y, pass) {
                candidates.push((x, y));
            }
        }
    }
    let mut removed = 0;
    for (x, y) in candidates {
        // sequential re-check keeps each deletion topology-safe
        if deletable(m, x, y, pass) {
            m.set(x, y, false);
            removed += 1;
        }
    }
    removed
}

/// Number of 8-connected components among the set ring pixels, using true
/// pixel adjacency. Unlike the ring-order transition count this sees the
/// diagonal bridge between e.g. a set W and a set S neighbor when SW is
/// unset, which is exactly the case that leaves junction blocks stuck.
fn ring_component_count(r: &[bool; 8]) -> usize {
    // positions in ring order: N, NE, E, SE, S, SW, W, NW
    const POS: [(i8, i8); 8] = [
        (0, -1),
        (1, -1),
        (1, 0),
        (1, 1),
        (0, 1),
        (-1, 1),
        (-1, 0),
        (-1, -1),
    ];
    let mut seen = [false; 8];
    let mut components = 0;
    for i in 0..8 {
        if !r[i] || seen[i] {
            continue;
        }
        components += 1;
        seen[i] = true;
        let mut stack = vec![i];
        while let Some(j) = stack.pop() {
            for k in 0..8 {
                if r[k] && !seen[k] {
                    let dx = (POS[j].0 - POS[k].0).abs();
                    let dy = (POS[j].1 - POS[k].1).abs();
                    if dx <= 1 && dy <= 1 {
                        seen[k] = true;
                        stack.push(k);
                    }
                }
            }
        }
    }
    components
}

/// True when deleting (x, y) preserves both foreground 8-connectivity and
/// background 4-connectivity in its neighborhood (the exact simple-point
/// test for (8, 4) pictures).
fn simple<S: Scalar>(m: &BinaryMask<S>, x: usize, y: usize) -> bool {
    let r = ring(m, x, y);
    if set_count(&r) < 2 || ring_component_count(&r) != 1 {
        return false;
    }
    // deleting a pixel whose 4-neighbors are all set would open a hole
    !(r[0] && r[2] && r[4] && r[6])
}

/// Deletes one simple pixel from every remaining fully set 2x2 block until
/// none are left (or none can be removed without changing topology).
fn collapse_blocks<S: Scalar>(m: &mut BinaryMask<S>) {
    loop {
        let mut blocks = 0;
        let mut removed = 0;
        for y in 0..m.height().saturating_sub(1) {
            for x in 0..m.width().saturating_sub(1) {
                if !(m.get(x, y) && m.get(x + 1, y) && m.get(x, y + 1) && m.get(x + 1, y + 1)) {
                    continue;
                }
                blocks += 1;
                let corners = [(x, y), (x + 1, y), (x, y + 1), (x + 1, y + 1)];
                if let Some(&(cx, cy)) = corners.iter().find(|&&(cx, cy)| simple(m, cx, cy)) {
                    m.set(cx, cy, false);
                    removed += 1;
                }
            }
        }
        if blocks == 0 || removed == 0 {
            break;
        }
    }
}

/// Thins a binary mask to a one-pixel-wide skeleton, preserving its
/// 8-connected component count.
pub fn skeletonize<S: Scalar>(mask: &BinaryMask<S>) -> Skeleton<S> {
    let mut img = mask.clone();
    loop {
        let removed = subiteration(&mut img, Subpass::First) + subiteration(&mut img, Subpass::Second);
        if removed == 0 {
            break;
        }
    }
    collapse_blocks(&mut img);
    Skeleton::from_mask_unchecked(img)
}
