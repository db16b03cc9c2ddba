//! Ramer-Douglas-Peucker polyline simplification.

use crate::geometry::{point_segment_distance, Point2};
use crate::graph::RoadGraph;
use crate::scalar::Scalar;

/// Simplifies one polyline: keeps the endpoints and every vertex whose
/// removal would leave some original point farther than `epsilon` from the
/// simplified line. With `epsilon = 0` only exactly collinear interior
/// points are dropped.
pub fn simplify_polyline<S: Scalar>(polyline: &[Point2<S>], epsilon: S) -> Vec<Point2<S>> {
    if polyline.len() <= 2 {
        return polyline.to_vec();
    }
    let mut keep = vec![false; polyline.len()];
    keep[0] = true;
    keep[polyline.len() - 1] = true;
    let mut stack = vec![(0usize, polyline.len() - 1)];
    while let Some((lo, hi)) = stack.pop() {
        if hi - lo < 2 {
            continue;
        }
        let (a, b) = (polyline[lo], polyline[hi]);
        let mut worst = lo;
        let mut worst_dist = S::neg_infinity();
        for (i, p) in polyline.iter().enumerate().take(hi).skip(lo + 1) {
            let d = point_segment_distance(*p, a, b);
            if d > worst_dist {
                worst_dist = d;
                worst = i;
            }
        }
        if worst_dist > epsilon {
            keep[worst] = true;
            stack.push((lo, worst));
            stack.push((worst, hi));
        }
    }
    polyline
        .iter()
        .zip(&keep)
        .filter_map(|(p, k)| k.then_some(*p))
        .collect()
}

/// Replaces every edge polyline by its RDP simplification; node positions
/// and topology are unchanged, edge lengths are recomputed.
pub fn rdp_simplify<S: Scalar>(graph: &RoadGraph<S>, epsilon: S) -> RoadGraph<S> {
    debug_assert!(epsilon >= S::zero());
    let mut out = RoadGraph::new();
    for node in &graph.nodes {
        out.add_node(node.position);
    }
    for edge in &graph.edges {
        let simplified = simplify_polyline(&edge.polyline, epsilon);
        out.add_edge(edge.node_a, edge.node_b, simplified);
    }
    out
}
