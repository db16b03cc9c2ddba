//! Dijkstra shortest paths over nonnegative edge weights.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::Error;
use crate::graph::{NodeId, WeightedGraph};
use crate::scalar::Scalar;
use crate::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PathStatus {
    Found,
    NoPath,
}

/// Outcome of one shortest-path query.
#[derive(Debug, Clone, PartialEq)]
pub struct PathResult<S> {
    pub status: PathStatus,
    /// Present iff a path was found.
    pub total_weight: Option<S>,
    /// Source..destination, consecutive nodes sharing an edge; empty when
    /// no path exists.
    pub node_sequence: Vec<NodeId>,
}

impl<S> PathResult<S> {
    pub fn is_found(&self) -> bool {
        self.status == PathStatus::Found
    }

    fn no_path() -> Self {
        PathResult {
            status: PathStatus::NoPath,
            total_weight: None,
            node_sequence: Vec::new(),
        }
    }
}

struct HeapEntry<S> {
    dist: S,
    node: NodeId,
}

impl<S: Scalar> PartialEq for HeapEntry<S> {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl<S: Scalar> Eq for HeapEntry<S> {}

impl<S: Scalar> Ord for HeapEntry<S> {
    fn cmp(&self, other: &Self) -> Ordering {
        // reversed: BinaryHeap is a max-heap, we want smallest distance
        // first, smallest node id on equal distance
        other
            .dist
            .partial_cmp(&self.dist)
            .unwrap_or(Ordering::Equal)
            .then_with(|| other.node.cmp(&self.node))
    }
}

impl<S: Scalar> PartialOrd for HeapEntry<S> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Minimal-weight path from `src` to `dst`. Weights must be nonnegative.
///
/// Deterministic: the frontier pops equal distances by node id, and on
/// equal-distance relaxations the smaller predecessor id wins.
pub fn shortest_path<S: Scalar>(
    wg: &WeightedGraph<S>,
    src: NodeId,
    dst: NodeId,
) -> Result<PathResult<S>> {
    let n = wg.graph.node_count();
    if src.0 >= n {
        return Err(Error::UnknownNode(src.0));
    }
    if dst.0 >= n {
        return Err(Error::UnknownNode(dst.0));
    }
    debug_assert!(wg.weights.iter().all(|w| *w >= S::zero()));

    let adjacency = wg.graph.adjacency();
    let mut dist: Vec<Option<S>> = vec![None; n];
    let mut pred: Vec<Option<NodeId>> = vec![None; n];
    let mut settled = vec![false; n];
    let mut heap = BinaryHeap::new();

    dist[src.0] = Some(S::zero());
    heap.push(HeapEntry {
        dist: S::zero(),
        node: src,
    });

    while let Some(HeapEntry { dist: d, node }) = heap.pop() {
        if settled[node.0] {
            continue;
        }
        settled[node.0] = true;
        if node == dst {
            break;
        }
        for &(edge, next) in &adjacency[node.0] {
            if settled[next.0] {
                continue;
            }
            let candidate = d + wg.weights[edge.0];
            match dist[next.0] {
                Some(best) if candidate > best => {}
                Some(best) if candidate == best => {
                    // deterministic tie: keep the smaller predecessor id
                    if pred[next.0].is_none_or(|p| node < p) {
                        pred[next.0] = Some(node);
                    }
                }
                _ => {
                    dist[next.0] = Some(candidate);
                    pred[next.0] = Some(node);
                    heap.push(HeapEntry {
                        dist: candidate,
                        node: next,
                    });
                }
            }
        }
    }

    let Some(total) = dist[dst.0].filter(|_| settled[dst.0]) else {
        return Ok(PathResult::no_path());
    };
    let mut sequence = vec![dst];
    let mut cur = dst;
    while cur != src {
        cur = pred[cur.0].expect("settled node has a predecessor chain");
        sequence.push(cur);
    }
    sequence.reverse();
    Ok(PathResult {
        status: PathStatus::Found,
        total_weight: Some(total),
        node_sequence: sequence,
    })
}
