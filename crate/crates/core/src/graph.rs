//! Spatial road graphs: nodes, polyline edges and weighted routing views.

use std::collections::HashSet;

use crate::geometry::{polyline_length, Point2};
use crate::scalar::Scalar;

/// Identifier of a node within one [`RoadGraph`]; equals its index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeId(pub usize);

/// Identifier of an edge within one [`RoadGraph`]; equals its index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId(pub usize);

impl std::fmt::Display for NodeId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl std::fmt::Display for EdgeId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Node<S> {
    pub id: NodeId,
    pub position: Point2<S>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Edge<S> {
    pub id: EdgeId,
    pub node_a: NodeId,
    pub node_b: NodeId,
    /// Ordered world-coordinate points; first/last coincide with the
    /// endpoint node positions.
    pub polyline: Vec<Point2<S>>,
    pub length: S,
}

/// A spatial graph of road centerlines.
///
/// Node and edge ids equal their indices in the respective vectors. Parallel
/// edges and self-loops are allowed.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct RoadGraph<S> {
    pub nodes: Vec<Node<S>>,
    pub edges: Vec<Edge<S>>,
}

impl<S: Scalar> RoadGraph<S> {
    pub fn new() -> Self {
        RoadGraph {
            nodes: Vec::new(),
            edges: Vec::new(),
        }
    }

    pub fn add_node(&mut self, position: Point2<S>) -> NodeId {
        let id = NodeId(self.nodes.len());
        self.nodes.push(Node { id, position });
        id
    }

    /// Adds an edge; the polyline must start at `a`'s position and end at
    /// `b`'s. Length is computed from the polyline.
    pub fn add_edge(&mut self, a: NodeId, b: NodeId, polyline: Vec<Point2<S>>) -> EdgeId {
        debug_assert!(a.0 < self.nodes.len() && b.0 < self.nodes.len());
        debug_assert!(polyline.len() >= 2);
        let id = EdgeId(self.edges.len());
        let length = polyline_length(&polyline);
        self.edges.push(Edge {
            id,
            node_a: a,
            node_b: b,
            polyline,
            length,
        });
        id
    }

    pub fn node(&self, id: NodeId) -> &Node<S> {
        &self.nodes[id.0]
    }

    pub fn edge(&self, id: EdgeId) -> &Edge<S> {
        &self.edges[id.0]
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn total_length(&self) -> S {
        self.edges
            .iter()
            .fold(S::zero(), |acc, e| acc + e.length)
    }

    /// Per-node list of (incident edge, opposite node).
    pub fn adjacency(&self) -> Vec<Vec<(EdgeId, NodeId)>> {
        let mut adj = vec![Vec::new(); self.nodes.len()];
        for e in &self.edges {
            adj[e.node_a.0].push((e.id, e.node_b));
            if e.node_a != e.node_b {
                adj[e.node_b.0].push((e.id, e.node_a));
            }
        }
        adj
    }

    pub fn degree(&self, node: NodeId) -> usize {
        self.edges
            .iter()
            .filter(|e| e.node_a == node || e.node_b == node)
            .count()
    }

    /// Nearest node to a point, with its distance.
    pub fn nearest_node(&self, p: Point2<S>) -> Option<(NodeId, S)> {
        self.nodes
            .iter()
            .map(|n| (n.id, n.position.distance(p)))
            .min_by(|a, b| a.1.partial_cmp(&b.1).unwrap_or(std::cmp::Ordering::Equal))
    }

    /// Number of connected components over the node set (isolated nodes
    /// count as components).
    pub fn component_count(&self) -> usize {
        let adj = self.adjacency();
        let mut seen = vec![false; self.nodes.len()];
        let mut components = 0;
        for start in 0..self.nodes.len() {
            if seen[start] {
                continue;
            }
            components += 1;
            let mut stack = vec![start];
            seen[start] = true;
            while let Some(n) = stack.pop() {
                for &(_, next) in &adj[n] {
                    if !seen[next.0] {
                        seen[next.0] = true;
                        stack.push(next.0);
                    }
                }
            }
        }
        components
    }

    /// Checks the structural invariants; returns a description of the first
    /// violation, if any.
    pub fn validate(&self) -> Option<String> {
        for (i, n) in self.nodes.iter().enumerate() {
            if n.id.0 != i {
                return Some(format!("node id {} at index {i}", n.id));
            }
        }
        let mut ids = HashSet::new();
        for (i, e) in self.edges.iter().enumerate() {
            if e.id.0 != i || !ids.insert(e.id) {
                return Some(format!("edge id {} at index {i}", e.id));
            }
            if e.node_a.0 >= self.nodes.len() || e.node_b.0 >= self.nodes.len() {
                return Some(format!("edge {} references a missing node", e.id));
            }
            if e.polyline.len() < 2 {
                return Some(format!("edge {} polyline has < 2 points", e.id));
            }
            let tol = S::of(1e-6);
            let first = e.polyline[0];
            let last = *e.polyline.last().unwrap();
            if first.distance(self.node(e.node_a).position) > tol
                || last.distance(self.node(e.node_b).position) > tol
            {
                return Some(format!("edge {} polyline detached from endpoints", e.id));
            }
            let len = polyline_length(&e.polyline);
            let scale = len.max(S::one());
            if (len - e.length).abs() / scale > S::of(1e-6) {
                return Some(format!("edge {} length {} != polyline {}", e.id, e.length, len));
            }
        }
        None
    }
}

/// A road graph plus one routing weight per edge.
#[derive(Debug, Clone)]
pub struct WeightedGraph<S> {
    pub graph: RoadGraph<S>,
    /// `weights[i]` belongs to `graph.edges[i]`.
    pub weights: Vec<S>,
}

impl<S: Scalar> WeightedGraph<S> {
    /// Weights every edge by its euclidean polyline length.
    pub fn by_length(graph: RoadGraph<S>) -> Self {
        let weights = graph.edges.iter().map(|e| e.length).collect();
        WeightedGraph { graph, weights }
    }

    pub fn with_weights(graph: RoadGraph<S>, weights: Vec<S>) -> Self {
        assert_eq!(graph.edges.len(), weights.len());
        WeightedGraph { graph, weights }
    }
}
