//! Locating difference sub-segments on the prior network.

use std::collections::HashMap;

use crate::compare::SubSegmentSet;
use crate::geometry::{point_segment_distance, Point2};
use crate::graph::{EdgeId, RoadGraph};
use crate::scalar::Scalar;

/// One difference sub-segment located on its closest prior-network edge.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DamageAssignment<S> {
    /// Index of the sub-segment in the difference set.
    pub diff_segment: usize,
    pub osm_edge: EdgeId,
    /// Length of the missing sub-segment.
    pub s_e_diff: S,
    /// Midpoint-to-edge distance, clamped from below to `d_min`.
    pub d: S,
}

/// Assignments plus the segments that were too far from every edge.
#[derive(Debug, Clone, Default)]
pub struct DamageReport<S> {
    pub assignments: Vec<DamageAssignment<S>>,
    pub unassigned: Vec<usize>,
}

/// A polyline piece of one edge, indexed by the grid.
type GridSegment<S> = (EdgeId, Point2<S>, Point2<S>);

/// Uniform grid over the polyline segments of a graph's edges, with cells
/// sized so a 3x3 neighborhood covers any query radius up to `reach`.
struct SegmentGrid<S> {
    cell: S,
    cells: HashMap<(i64, i64), Vec<GridSegment<S>>>,
}

impl<S: Scalar> SegmentGrid<S> {
    fn build(graph: &RoadGraph<S>, reach: S) -> Self {
        let cell = reach.max(S::of(1e-9));
        let mut cells: HashMap<(i64, i64), Vec<GridSegment<S>>> = HashMap::new();
        for edge in &graph.edges {
            for seg in edge.polyline.windows(2) {
                let (a, b) = (seg[0], seg[1]);
                let (cx0, cy0) = Self::cell_of(a.x.min(b.x), a.y.min(b.y), cell);
                let (cx1, cy1) = Self::cell_of(a.x.max(b.x), a.y.max(b.y), cell);
                for cy in cy0..=cy1 {
                    for cx in cx0..=cx1 {
                        cells.entry((cx, cy)).or_default().push((edge.id, a, b));
                    }
                }
            }
        }
        SegmentGrid { cell, cells }
    }

    fn cell_of(x: S, y: S, cell: S) -> (i64, i64) {
        (
            (x / cell).floor().to_i64().unwrap_or(0),
            (y / cell).floor().to_i64().unwrap_or(0),
        )
    }

    /// Minimum distance per edge id among segments within one cell ring of
    /// `p`; complete for any true distance up to the grid's reach.
    fn nearby_edge_distances(&self, p: Point2<S>) -> Vec<(EdgeId, S)> {
        let (cx, cy) = Self::cell_of(p.x, p.y, self.cell);
        let mut per_edge: HashMap<EdgeId, S> = HashMap::new();
        for dy in -1..=1 {
            for dx in -1..=1 {
                let Some(entries) = self.cells.get(&(cx + dx, cy + dy)) else {
                    continue;
                };
                for &(edge, a, b) in entries {
                    let d = point_segment_distance(p, a, b);
                    per_edge
                        .entry(edge)
                        .and_modify(|best| {
                            if d < *best {
                                *best = d;
                            }
                        })
                        .or_insert(d);
                }
            }
        }
        let mut out: Vec<(EdgeId, S)> = per_edge.into_iter().collect();
        out.sort_by_key(|a| a.0);
        out
    }
}

fn pick_nearest<S: Scalar>(distances: &[(EdgeId, S)]) -> Option<(EdgeId, S)> {
    let mut best: Option<(EdgeId, S)> = None;
    for &(edge, d) in distances {
        // candidates arrive sorted by edge id, so strict less keeps the
        // lowest id on ties
        if best.is_none_or(|(_, bd)| d < bd) {
            best = Some((edge, d));
        }
    }
    best
}

/// Maps every difference sub-segment to the prior-network edge closest to
/// its midpoint. Segments farther than `max_assign_dist` from every edge
/// are reported unassigned; assigned distances are clamped to `d_min`.
/// Equidistant edges resolve to the lower edge id.
pub fn assign_damage<S: Scalar>(
    diff: &SubSegmentSet<S>,
    osm: &RoadGraph<S>,
    max_assign_dist: S,
    d_min: S,
) -> DamageReport<S> {
    debug_assert!(max_assign_dist > S::zero());
    let grid = SegmentGrid::build(osm, max_assign_dist);
    let mut report = DamageReport::default();
    for (i, seg) in diff.segments.iter().enumerate() {
        let distances = grid.nearby_edge_distances(seg.midpoint());
        match pick_nearest(&distances) {
            Some((edge, d)) if d <= max_assign_dist => {
                report.assignments.push(DamageAssignment {
                    diff_segment: i,
                    osm_edge: edge,
                    s_e_diff: seg.length(),
                    d: d.max(d_min),
                });
            }
            _ => report.unassigned.push(i),
        }
    }
    report
}

/// Reference implementation scanning every edge of the network for every
/// segment; same tie rule, no spatial index.
pub fn assign_damage_bruteforce<S: Scalar>(
    diff: &SubSegmentSet<S>,
    osm: &RoadGraph<S>,
    max_assign_dist: S,
    d_min: S,
) -> DamageReport<S> {
    let mut report = DamageReport::default();
    for (i, seg) in diff.segments.iter().enumerate() {
        let mid = seg.midpoint();
        let mut best: Option<(EdgeId, S)> = None;
        for edge in &osm.edges {
            let d = edge
                .polyline
                .windows(2)
                .map(|w| point_segment_distance(mid, w[0], w[1]))
                .fold(S::infinity(), S::min);
            if best.is_none_or(|(_, bd)| d < bd) {
                best = Some((edge.id, d));
            }
        }
        match best {
            Some((edge, d)) if d <= max_assign_dist => {
                report.assignments.push(DamageAssignment {
                    diff_segment: i,
                    osm_edge: edge,
                    s_e_diff: seg.length(),
                    d: d.max(d_min),
                });
            }
            _ => report.unassigned.push(i),
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::compare::SubSegment;
    use rand::{Rng as _, SeedableRng as _};
    use rand_chacha::ChaCha8Rng;

    fn p(x: f64, y: f64) -> Point2<f64> {
        Point2::new(x, y)
    }

    fn seg_at(i: usize, x1: f64, y1: f64, x2: f64, y2: f64) -> SubSegment<f64> {
        SubSegment {
            v1: p(x1, y1),
            v2: p(x2, y2),
            parent_edge: EdgeId(0),
            index: i,
        }
    }

    fn two_parallel_roads() -> RoadGraph<f64> {
        let mut g = RoadGraph::new();
        let a = g.add_node(p(0.0, 0.0));
        let b = g.add_node(p(100.0, 0.0));
        let c = g.add_node(p(0.0, 10.0));
        let d = g.add_node(p(100.0, 10.0));
        g.add_edge(a, b, vec![p(0.0, 0.0), p(100.0, 0.0)]);
        g.add_edge(c, d, vec![p(0.0, 10.0), p(100.0, 10.0)]);
        g
    }

    #[test]
    fn segment_on_edge_gets_clamped_distance() {
        let osm = two_parallel_roads();
        let diff = SubSegmentSet {
            segments: vec![seg_at(0, 20.0, 0.0, 30.0, 0.0)],
            slice_length: 20.0,
        };
        let report = assign_damage(&diff, &osm, 30.0, 1.0);
        assert_eq!(report.assignments.len(), 1);
        let a = report.assignments[0];
        assert_eq!(a.osm_edge, EdgeId(0));
        assert_eq!(a.d, 1.0, "zero distance clamps to d_min");
        assert_eq!(a.s_e_diff, 10.0);
        assert!(report.unassigned.is_empty());
    }

    #[test]
    fn equidistant_tie_takes_lower_edge_id() {
        let osm = two_parallel_roads();
        let diff = SubSegmentSet {
            segments: vec![seg_at(0, 40.0, 5.0, 50.0, 5.0)],
            slice_length: 20.0,
        };
        let report = assign_damage(&diff, &osm, 30.0, 1.0);
        assert_eq!(report.assignments[0].osm_edge, EdgeId(0));
    }

    #[test]
    fn distant_segments_are_unassigned() {
        let osm = two_parallel_roads();
        let diff = SubSegmentSet {
            segments: vec![seg_at(0, 50.0, 500.0, 60.0, 500.0)],
            slice_length: 20.0,
        };
        let report = assign_damage(&diff, &osm, 30.0, 1.0);
        assert!(report.assignments.is_empty());
        assert_eq!(report.unassigned, vec![0]);
    }

    #[test]
    fn matches_bruteforce_on_random_scenes() {
        for seed in 0..20u64 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut osm = RoadGraph::new();
            for _ in 0..15 {
                let a = p(rng.gen_range(0.0..400.0), rng.gen_range(0.0..400.0));
                let b = p(
                    a.x + rng.gen_range(-80.0..80.0),
                    a.y + rng.gen_range(-80.0..80.0),
                );
                let na = osm.add_node(a);
                let nb = osm.add_node(b);
                osm.add_edge(na, nb, vec![a, b]);
            }
            let segments = (0..60)
                .map(|i| {
                    let x = rng.gen_range(0.0..400.0);
                    let y = rng.gen_range(0.0..400.0);
                    seg_at(i, x, y, x + rng.gen_range(-15.0..15.0), y + rng.gen_range(-15.0..15.0))
                })
                .collect();
            let diff = SubSegmentSet {
                segments,
                slice_length: 20.0,
            };
            let fast = assign_damage(&diff, &osm, 30.0, 1.0);
            let slow = assign_damage_bruteforce(&diff, &osm, 30.0, 1.0);
            assert_eq!(fast.assignments, slow.assignments, "seed {seed}");
            assert_eq!(fast.unassigned, slow.unassigned, "seed {seed}");
        }
    }
}
