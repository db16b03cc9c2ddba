//! Graph simplification, sub-segment slicing, correspondence and metrics.

mod matching;
mod metrics;
mod rdp;
mod slice;

pub use matching::{
    graph_difference, graph_intersection, match_segments, match_segments_bruteforce,
};
pub use metrics::{segment_metrics, MatchMetrics};
pub use rdp::{rdp_simplify, simplify_polyline};
pub use slice::{slice_segments, SubSegment, SubSegmentSet};
