//! Sub-segment correspondence between two sliced graphs.
//!
//! Two sub-segments correspond when both endpoint distances are strictly
//! below half the slice length, testing both endpoint orientations since
//! traversal direction is arbitrary. On top of that predicate a one-to-one
//! assignment is enforced: candidate pairs are taken greedily by summed
//! endpoint distance (ties by segment ids), so each segment matches at most
//! once and true-positive counting is well defined.
//!
//! Candidate lookup runs on a uniform grid keyed by segment endpoints with
//! cell size equal to the slice length; it is behaviorally identical to the
//! quadratic scan over all pairs.

use std::collections::{HashMap, HashSet};

use crate::compare::{SubSegment, SubSegmentSet};
use crate::error::Error;
use crate::scalar::Scalar;
use crate::Result;

/// Summed endpoint distance of the best qualifying orientation, or `None`
/// when neither orientation passes the strict `l / 2` test.
fn pair_score<S: Scalar>(a: &SubSegment<S>, b: &SubSegment<S>, half: S) -> Option<S> {
    let d11 = a.v1.distance(b.v1);
    let d22 = a.v2.distance(b.v2);
    let d12 = a.v1.distance(b.v2);
    let d21 = a.v2.distance(b.v1);
    let mut best: Option<S> = None;
    if d11 < half && d22 < half {
        best = Some(d11 + d22);
    }
    if d12 < half && d21 < half {
        let swapped = d12 + d21;
        best = Some(match best {
            Some(s) if s <= swapped => s,
            _ => swapped,
        });
    }
    best
}

fn check_slice_lengths<S: Scalar>(a: &SubSegmentSet<S>, b: &SubSegmentSet<S>) -> Result<S> {
    let (la, lb) = (a.slice_length, b.slice_length);
    let scale = la.abs().max(lb.abs()).max(S::one());
    if (la - lb).abs() > scale * S::of(1e-9) {
        return Err(Error::SliceLengthMismatch(la.widen(), lb.widen()));
    }
    Ok(la)
}

fn cell_of<S: Scalar>(x: S, y: S, cell: S) -> (i64, i64) {
    (
        (x / cell).floor().to_i64().unwrap_or(0),
        (y / cell).floor().to_i64().unwrap_or(0),
    )
}

/// One-to-one correspondence pairs `(a index, b index)`, ordered by the
/// greedy acceptance sequence.
pub fn match_segments<S: Scalar>(
    a: &SubSegmentSet<S>,
    b: &SubSegmentSet<S>,
) -> Result<Vec<(usize, usize)>> {
    let l = check_slice_lengths(a, b)?;
    let half = l * S::of(0.5);

    // grid over b's endpoints, cell size l >= the l/2 query radius
    let mut grid: HashMap<(i64, i64), Vec<usize>> = HashMap::new();
    for (j, seg) in b.segments.iter().enumerate() {
        let c1 = cell_of(seg.v1.x, seg.v1.y, l);
        let c2 = cell_of(seg.v2.x, seg.v2.y, l);
        grid.entry(c1).or_default().push(j);
        if c2 != c1 {
            grid.entry(c2).or_default().push(j);
        }
    }

    let mut candidates: Vec<(S, usize, usize)> = Vec::new();
    let mut seen: HashSet<usize> = HashSet::new();
    for (i, seg) in a.segments.iter().enumerate() {
        seen.clear();
        // any qualifying b has an endpoint within l/2 of seg.v1
        let (cx, cy) = cell_of(seg.v1.x, seg.v1.y, l);
        for dy in -1..=1 {
            for dx in -1..=1 {
                let Some(js) = grid.get(&(cx + dx, cy + dy)) else {
                    continue;
                };
                for &j in js {
                    if !seen.insert(j) {
                        continue;
                    }
                    if let Some(score) = pair_score(seg, &b.segments[j], half) {
                        candidates.push((score, i, j));
                    }
                }
            }
        }
    }

    Ok(greedy_one_to_one(candidates, a.len(), b.len()))
}

/// Greedy assignment by ascending (score, a index, b index).
fn greedy_one_to_one<S: Scalar>(
    mut candidates: Vec<(S, usize, usize)>,
    a_len: usize,
    b_len: usize,
) -> Vec<(usize, usize)> {
    candidates.sort_by(|x, y| {
        x.0.partial_cmp(&y.0)
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(x.1.cmp(&y.1))
            .then(x.2.cmp(&y.2))
    });
    let mut used_a = vec![false; a_len];
    let mut used_b = vec![false; b_len];
    let mut pairs = Vec::new();
    for (_, i, j) in candidates {
        if !used_a[i] && !used_b[j] {
            used_a[i] = true;
            used_b[j] = true;
            pairs.push((i, j));
        }
    }
    pairs
}

/// Brute-force reference matcher: the same predicate and greedy rule over
/// the full O(n^2) pair enumeration, with no spatial index.
pub fn match_segments_bruteforce<S: Scalar>(
    a: &SubSegmentSet<S>,
    b: &SubSegmentSet<S>,
) -> Result<Vec<(usize, usize)>> {
    let l = check_slice_lengths(a, b)?;
    let half = l * S::of(0.5);
    let mut candidates = Vec::new();
    for (i, sa) in a.segments.iter().enumerate() {
        for (j, sb) in b.segments.iter().enumerate() {
            if let Some(score) = pair_score(sa, sb, half) {
                candidates.push((score, i, j));
            }
        }
    }
    Ok(greedy_one_to_one(candidates, a.len(), b.len()))
}

/// The a-side segments of all matched pairs.
pub fn graph_intersection<S: Scalar>(
    a: &SubSegmentSet<S>,
    b: &SubSegmentSet<S>,
) -> Result<SubSegmentSet<S>> {
    let pairs = match_segments(a, b)?;
    let mut matched: Vec<usize> = pairs.iter().map(|(i, _)| *i).collect();
    matched.sort_unstable();
    Ok(SubSegmentSet {
        segments: matched.iter().map(|i| a.segments[*i]).collect(),
        slice_length: a.slice_length,
    })
}

/// The a-side segments with no match in b; together with
/// [`graph_intersection`] this partitions `a` exactly.
pub fn graph_difference<S: Scalar>(
    a: &SubSegmentSet<S>,
    b: &SubSegmentSet<S>,
) -> Result<SubSegmentSet<S>> {
    let pairs = match_segments(a, b)?;
    let mut matched = vec![false; a.len()];
    for (i, _) in pairs {
        matched[i] = true;
    }
    Ok(SubSegmentSet {
        segments: a
            .segments
            .iter()
            .zip(&matched)
            .filter_map(|(s, m)| (!m).then_some(*s))
            .collect(),
        slice_length: a.slice_length,
    })
}
