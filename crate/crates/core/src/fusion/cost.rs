//! Damage-weighted edge costs and the routable view.

use std::collections::BTreeSet;

use crate::fusion::DamageAssignment;
use crate::graph::{EdgeId, RoadGraph, WeightedGraph};
use crate::scalar::Scalar;

/// Disaster impact factor: a finite multiplier from 1 upward, or infinite
/// (assigned roads are treated as impassable and removed).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Alpha<S> {
    Finite(S),
    Infinite,
}

impl<S: Scalar> Alpha<S> {
    pub fn is_infinite(&self) -> bool {
        matches!(self, Alpha::Infinite)
    }

    /// Parses `"inf"` / `"infinity"` (case-insensitive) or a number >= 1.
    pub fn parse(text: &str) -> Option<Self> {
        let t = text.trim();
        if t.eq_ignore_ascii_case("inf") || t.eq_ignore_ascii_case("infinity") {
            return Some(Alpha::Infinite);
        }
        let v: f64 = t.parse().ok()?;
        if v >= 1.0 && v.is_finite() {
            Some(Alpha::Finite(S::of(v)))
        } else if v.is_infinite() && v > 0.0 {
            Some(Alpha::Infinite)
        } else {
            None
        }
    }
}

impl<S: Scalar> std::fmt::Display for Alpha<S> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Alpha::Finite(v) => write!(f, "{v}"),
            Alpha::Infinite => write!(f, "inf"),
        }
    }
}

/// A prior road network with per-edge damage costs.
///
/// `edge_costs[i]` is the floored multiplier for `base.edges[i]` (always
/// >= 1); `raw_contributions[i]` is the unfloored sum of `alpha * s / d^2`
/// > terms. Edges in `removed` are excluded from the routing view.
#[derive(Debug, Clone)]
pub struct CostedGraph<S> {
    pub base: RoadGraph<S>,
    pub edge_costs: Vec<S>,
    pub raw_contributions: Vec<S>,
    pub removed: BTreeSet<EdgeId>,
    pub alpha: Alpha<S>,
}

impl<S: Scalar> CostedGraph<S> {
    /// The undamaged graph: every cost 1, nothing removed.
    pub fn unit(base: RoadGraph<S>, alpha: Alpha<S>) -> Self {
        let n = base.edges.len();
        CostedGraph {
            base,
            edge_costs: vec![S::one(); n],
            raw_contributions: vec![S::zero(); n],
            removed: BTreeSet::new(),
            alpha,
        }
    }

    pub fn cost(&self, edge: EdgeId) -> Option<S> {
        if self.removed.contains(&edge) {
            None
        } else {
            Some(self.edge_costs[edge.0])
        }
    }

    /// Routable graph: retained edges weighted by `length * cost`, removed
    /// edges dropped (edge ids are re-assigned, node ids preserved).
    pub fn routing_view(&self) -> WeightedGraph<S> {
        let mut graph = RoadGraph::new();
        for node in &self.base.nodes {
            graph.add_node(node.position);
        }
        let mut weights = Vec::new();
        for edge in &self.base.edges {
            if self.removed.contains(&edge.id) {
                continue;
            }
            graph.add_edge(edge.node_a, edge.node_b, edge.polyline.clone());
            weights.push(edge.length * self.edge_costs[edge.id.0]);
        }
        WeightedGraph::with_weights(graph, weights)
    }
}

/// Applies the damage cost update.
///
/// Each assignment contributes `alpha * s_e_diff / d^2` to its edge; an
/// edge's contributions sum and the final cost is floored at 1, so
/// undamaged and barely-damaged edges route as plain length. With infinite
/// alpha every assigned edge is removed from the routing view instead.
pub fn apply_damage_costs<S: Scalar>(
    osm: &RoadGraph<S>,
    assignments: &[DamageAssignment<S>],
    alpha: Alpha<S>,
) -> CostedGraph<S> {
    let mut costed = CostedGraph::unit(osm.clone(), alpha);
    match alpha {
        Alpha::Infinite => {
            for a in assignments {
                costed.removed.insert(a.osm_edge);
            }
        }
        Alpha::Finite(factor) => {
            debug_assert!(factor >= S::one());
            for a in assignments {
                debug_assert!(a.d > S::zero());
                costed.raw_contributions[a.osm_edge.0] =
                    costed.raw_contributions[a.osm_edge.0] + factor * a.s_e_diff / (a.d * a.d);
            }
            for (cost, raw) in costed.edge_costs.iter_mut().zip(&costed.raw_contributions) {
                *cost = raw.max(S::one());
            }
        }
    }
    costed
}
