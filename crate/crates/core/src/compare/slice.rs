//! Slicing simplified edges into fixed-length sub-segments.

use crate::geometry::Point2;
use crate::graph::{EdgeId, RoadGraph};
use crate::scalar::Scalar;

/// One linear piece of at most `slice_length`, cut from a simplified edge.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SubSegment<S> {
    pub v1: Point2<S>,
    pub v2: Point2<S>,
    pub parent_edge: EdgeId,
    /// Position along the parent edge (0-based, counted across all of the
    /// edge's linear pieces).
    pub index: usize,
}

impl<S: Scalar> SubSegment<S> {
    pub fn length(&self) -> S {
        self.v1.distance(self.v2)
    }

    pub fn midpoint(&self) -> Point2<S> {
        self.v1.midpoint(self.v2)
    }
}

/// The sub-segments of a whole graph, sliced with one fixed length.
#[derive(Debug, Clone, PartialEq)]
pub struct SubSegmentSet<S> {
    pub segments: Vec<SubSegment<S>>,
    pub slice_length: S,
}

impl<S: Scalar> SubSegmentSet<S> {
    pub fn len(&self) -> usize {
        self.segments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.segments.is_empty()
    }
}

/// Cuts every linear piece of every edge into `floor(L / l)` sub-segments of
/// exactly `l` plus one remainder piece when `L mod l > 0`. Consecutive
/// sub-segments share cut points, so they tile the piece exactly.
///
/// Edges are expected to be piecewise linear already (post-RDP); each
/// window of two consecutive polyline points is treated as one piece.
pub fn slice_segments<S: Scalar>(graph: &RoadGraph<S>, slice_length: S) -> SubSegmentSet<S> {
    assert!(slice_length > S::zero(), "slice length must be positive");
    let tiny = slice_length * S::of(1e-9);
    let mut segments = Vec::new();
    for edge in &graph.edges {
        let mut index = 0usize;
        for piece in edge.polyline.windows(2) {
            let (a, b) = (piece[0], piece[1]);
            let total = a.distance(b);
            if total <= tiny {
                continue;
            }
            let full = (total / slice_length)
                .floor()
                .to_usize()
                .expect("piece length over slice length fits usize");
            let remainder = total - S::of(full as f64) * slice_length;
            let mut cuts = Vec::with_capacity(full + 2);
            cuts.push(a);
            for i in 1..=full {
                let t = S::of(i as f64) * slice_length / total;
                cuts.push(a + (b - a) * t);
            }
            if remainder > tiny {
                cuts.push(b);
            } else if let Some(last) = cuts.last_mut() {
                // snap an exact multiple onto the piece's endpoint
                *last = b;
            }
            for w in cuts.windows(2) {
                segments.push(SubSegment {
                    v1: w[0],
                    v2: w[1],
                    parent_edge: edge.id,
                    index,
                });
                index += 1;
            }
        }
    }
    SubSegmentSet {
        segments,
        slice_length,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::RoadGraph;
    use proptest::prelude::*;

    fn p(x: f64, y: f64) -> Point2<f64> {
        Point2::new(x, y)
    }

    fn one_edge_graph(points: Vec<Point2<f64>>) -> RoadGraph<f64> {
        let mut g = RoadGraph::new();
        let a = g.add_node(points[0]);
        let b = g.add_node(*points.last().unwrap());
        g.add_edge(a, b, points);
        g
    }

    #[test]
    fn ten_by_three_gives_three_three_three_one() {
        let g = one_edge_graph(vec![p(0.0, 0.0), p(10.0, 0.0)]);
        let set = slice_segments(&g, 3.0);
        let lengths: Vec<f64> = set.segments.iter().map(|s| s.length()).collect();
        assert_eq!(lengths.len(), 4);
        for (got, want) in lengths.iter().zip([3.0, 3.0, 3.0, 1.0]) {
            assert!((got - want).abs() < 1e-9, "lengths {lengths:?}");
        }
        // exact tiling: consecutive pieces share their cut point
        assert_eq!(set.segments[0].v2, set.segments[1].v1);
        assert_eq!(set.segments[3].v2, p(10.0, 0.0));
        let indices: Vec<usize> = set.segments.iter().map(|s| s.index).collect();
        assert_eq!(indices, vec![0, 1, 2, 3]);
    }

    #[test]
    fn piece_of_exactly_slice_length_is_one_segment() {
        let g = one_edge_graph(vec![p(0.0, 0.0), p(0.0, 20.0)]);
        let set = slice_segments(&g, 20.0);
        assert_eq!(set.len(), 1);
        assert_eq!(set.segments[0].v2, p(0.0, 20.0));
    }

    #[test]
    fn oversize_slice_length_keeps_pieces_whole() {
        let g = one_edge_graph(vec![p(0.0, 0.0), p(4.0, 0.0), p(4.0, 2.0)]);
        let set = slice_segments(&g, 100.0);
        assert_eq!(set.len(), 2, "one sub-segment per linear piece");
    }

    #[test]
    fn slicing_works_for_f32() {
        let mut g = RoadGraph::<f32>::new();
        let a = g.add_node(Point2::new(0.0f32, 0.0));
        let b = g.add_node(Point2::new(10.0f32, 0.0));
        g.add_edge(a, b, vec![Point2::new(0.0f32, 0.0), Point2::new(10.0, 0.0)]);
        let set = slice_segments(&g, 3.0f32);
        assert_eq!(set.len(), 4);
    }

    proptest! {
        // cut points tile each piece: lengths sum to the piece length and
        // every sub-segment is at most the slice length
        #[test]
        fn slicing_tiles_exactly(
            x in 0.5f64..200.0,
            y in -100.0f64..100.0,
            l in 0.1f64..50.0,
        ) {
            let target = p(x, y);
            let g = one_edge_graph(vec![p(0.0, 0.0), target]);
            let set = slice_segments(&g, l);
            let total: f64 = set.segments.iter().map(|s| s.length()).sum();
            let expect = target.distance(p(0.0, 0.0));
            prop_assert!((total - expect).abs() < 1e-6 * expect.max(1.0));
            for s in &set.segments {
                prop_assert!(s.length() <= l * (1.0 + 1e-9));
                prop_assert!(s.length() > 0.0);
            }
            prop_assert_eq!(set.segments[0].v1, p(0.0, 0.0));
            prop_assert_eq!(set.segments.last().unwrap().v2, target);
        }
    }
}
