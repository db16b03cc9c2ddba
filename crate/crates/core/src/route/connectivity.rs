//! Four-way connectivity classification of shortest paths.

use serde::{Deserialize, Serialize};

use crate::graph::{NodeId, WeightedGraph};
use crate::route::shortest_path;
use crate::scalar::Scalar;
use crate::Result;

/// Thresholds for the classification.
#[derive(Debug, Clone, Copy)]
pub struct ConnectivityParams<S> {
    /// A predicted path shorter than `ratio_low * truth` is Too Short.
    pub ratio_low: S,
    /// A predicted path longer than `ratio_high * truth` is Too Long.
    pub ratio_high: S,
    /// Pair endpoints map to the predicted graph's nearest node within this
    /// distance; unmappable endpoints count as No Connection.
    pub map_tolerance: S,
}

impl<S: Scalar> Default for ConnectivityParams<S> {
    fn default() -> Self {
        ConnectivityParams {
            ratio_low: S::of(0.9),
            ratio_high: S::of(1.1),
            map_tolerance: S::of(30.0),
        }
    }
}

/// Percentages of pairs per class; they sum to 100 (pairs with no truth
/// path are excluded from the denominator).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConnectivityReport {
    pub correct: f64,
    pub no_connections: f64,
    pub too_short: f64,
    pub too_long: f64,
    /// Pairs that entered the denominator.
    pub pair_count: usize,
    /// Pairs whose endpoints had no predicted-graph node within tolerance
    /// (included above as No Connection).
    pub mapping_failures: usize,
}

/// Classifies each truth-graph pair by comparing the predicted shortest
/// path weight against the truth weight.
pub fn connectivity_metrics<S: Scalar>(
    predicted: &WeightedGraph<S>,
    truth: &WeightedGraph<S>,
    pairs: &[(NodeId, NodeId)],
    params: &ConnectivityParams<S>,
) -> Result<ConnectivityReport> {
    assert!(
        params.ratio_low > S::zero()
            && params.ratio_low <= S::one()
            && params.ratio_high >= S::one(),
        "ratio band must straddle 1"
    );
    let mut correct = 0usize;
    let mut none = 0usize;
    let mut short = 0usize;
    let mut long = 0usize;
    let mut mapping_failures = 0usize;
    let mut included = 0usize;

    for &(src, dst) in pairs {
        let truth_path = shortest_path(truth, src, dst)?;
        let Some(w_t) = truth_path.total_weight else {
            continue; // no truth path: excluded entirely
        };
        included += 1;

        let map = |node: NodeId| -> Option<NodeId> {
            let position = truth.graph.node(node).position;
            match predicted.graph.nearest_node(position) {
                Some((id, d)) if d <= params.map_tolerance => Some(id),
                _ => None,
            }
        };
        let (Some(ps), Some(pd)) = (map(src), map(dst)) else {
            mapping_failures += 1;
            none += 1;
            continue;
        };
        match shortest_path(predicted, ps, pd)?.total_weight {
            None => none += 1,
            Some(w_p) => {
                if w_p < params.ratio_low * w_t {
                    short += 1;
                } else if w_p > params.ratio_high * w_t {
                    long += 1;
                } else {
                    correct += 1;
                }
            }
        }
    }

    let pct = |count: usize| {
        if included == 0 {
            0.0
        } else {
            100.0 * count as f64 / included as f64
        }
    };
    Ok(ConnectivityReport {
        correct: pct(correct),
        no_connections: pct(none),
        too_short: pct(short),
        too_long: pct(long),
        pair_count: included,
        mapping_failures,
    })
}
