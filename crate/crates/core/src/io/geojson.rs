//! GeoJSON serialization of graphs, sub-segments and costed networks.
//!
//! All collections carry a top-level `schema_version` member. Coordinates
//! are written in the working planar frame; converting lat/long inputs is a
//! preprocessing responsibility.

use serde_json::{json, Value};

use crate::compare::SubSegmentSet;
use crate::error::Error;
use crate::fusion::{load_osm_roads_value, Alpha, CostedGraph, OsmImport};
use crate::geometry::Point2;
use crate::graph::{RoadGraph, WeightedGraph};
use crate::io::SCHEMA_VERSION;
use crate::scalar::Scalar;
use crate::Result;

fn coords<S: Scalar>(polyline: &[Point2<S>]) -> Value {
    Value::Array(
        polyline
            .iter()
            .map(|p| json!([p.x.widen(), p.y.widen()]))
            .collect(),
    )
}

/// One LineString feature per edge with `{edge_id, node_a, node_b, length}`.
pub fn road_graph_to_geojson<S: Scalar>(graph: &RoadGraph<S>) -> Value {
    let features: Vec<Value> = graph
        .edges
        .iter()
        .map(|e| {
            json!({
                "type": "Feature",
                "properties": {
                    "edge_id": e.id.0,
                    "node_a": e.node_a.0,
                    "node_b": e.node_b.0,
                    "length": e.length.widen(),
                },
                "geometry": {
                    "type": "LineString",
                    "coordinates": coords(&e.polyline),
                },
            })
        })
        .collect();
    json!({
        "type": "FeatureCollection",
        "schema_version": SCHEMA_VERSION,
        "features": features,
    })
}

/// Loads a road graph from GeoJSON, snapping endpoints within `snap_tolerance`.
pub fn road_graph_from_geojson<S: Scalar>(text: &str, snap_tolerance: S) -> Result<OsmImport<S>> {
    let root: Value =
        serde_json::from_str(text).map_err(|e| Error::MalformedDocument(e.to_string()))?;
    load_osm_roads_value(&root, snap_tolerance)
}

/// Two-point LineStrings with `{segment_id, parent_edge, index}` and the
/// slice length as a top-level member.
pub fn subsegments_to_geojson<S: Scalar>(set: &SubSegmentSet<S>) -> Value {
    let features: Vec<Value> = set
        .segments
        .iter()
        .enumerate()
        .map(|(i, s)| {
            json!({
                "type": "Feature",
                "properties": {
                    "segment_id": i,
                    "parent_edge": s.parent_edge.0,
                    "index": s.index,
                },
                "geometry": {
                    "type": "LineString",
                    "coordinates": coords(&[s.v1, s.v2]),
                },
            })
        })
        .collect();
    json!({
        "type": "FeatureCollection",
        "schema_version": SCHEMA_VERSION,
        "slice_length": set.slice_length.widen(),
        "features": features,
    })
}

/// One LineString feature per base edge with `{edge_id, length, cost,
/// removed}`; `alpha` is a top-level member (number or `"inf"`).
pub fn costed_graph_to_geojson<S: Scalar>(costed: &CostedGraph<S>) -> Value {
    let alpha = match costed.alpha {
        Alpha::Finite(v) => json!(v.widen()),
        Alpha::Infinite => json!("inf"),
    };
    let features: Vec<Value> = costed
        .base
        .edges
        .iter()
        .map(|e| {
            json!({
                "type": "Feature",
                "properties": {
                    "edge_id": e.id.0,
                    "length": e.length.widen(),
                    "cost": costed.edge_costs[e.id.0].widen(),
                    "removed": costed.removed.contains(&e.id),
                },
                "geometry": {
                    "type": "LineString",
                    "coordinates": coords(&e.polyline),
                },
            })
        })
        .collect();
    json!({
        "type": "FeatureCollection",
        "schema_version": SCHEMA_VERSION,
        "alpha": alpha,
        "features": features,
    })
}

/// Rebuilds the routable view from a costed-graph document: removed edges
/// are dropped, retained edges weigh `cost * length`.
pub fn weighted_graph_from_costed_geojson<S: Scalar>(
    text: &str,
    snap_tolerance: S,
) -> Result<WeightedGraph<S>> {
    let root: Value =
        serde_json::from_str(text).map_err(|e| Error::MalformedDocument(e.to_string()))?;
    if root.get("type").and_then(Value::as_str) != Some("FeatureCollection") {
        return Err(Error::MalformedDocument(
            "document is not a FeatureCollection".into(),
        ));
    }
    let features = root
        .get("features")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::MalformedDocument("missing features array".into()))?;

    // strip removed edges, remember costs of the kept ones in order
    let mut kept = Vec::new();
    let mut costs: Vec<S> = Vec::new();
    for feature in features {
        let properties = feature.get("properties").unwrap_or(&Value::Null);
        let removed = properties
            .get("removed")
            .and_then(Value::as_bool)
            .unwrap_or(false);
        if removed {
            continue;
        }
        let cost = properties.get("cost").and_then(Value::as_f64).unwrap_or(1.0);
        if cost.is_nan() || cost < 1.0 {
            return Err(Error::SchemaMismatch(format!(
                "edge cost {cost} below 1"
            )));
        }
        kept.push(feature.clone());
        costs.push(S::of(cost));
    }
    let slim = json!({ "type": "FeatureCollection", "features": kept });
    let import = load_osm_roads_value::<S>(&slim, snap_tolerance)?;
    // costs pair with edges by feature order, which requires exactly one
    // LineString per feature
    if import.graph.edge_count() != costs.len() {
        return Err(Error::SchemaMismatch(format!(
            "{} retained features produced {} edges; costed documents need \
             one LineString per feature",
            costs.len(),
            import.graph.edge_count()
        )));
    }
    let weights = import
        .graph
        .edges
        .iter()
        .zip(&costs)
        .map(|(e, c)| e.length * *c)
        .collect();
    Ok(WeightedGraph::with_weights(import.graph, weights))
}
