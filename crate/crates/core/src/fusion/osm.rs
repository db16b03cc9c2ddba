//! Importing an OSM-style vector road network from GeoJSON.

use std::collections::HashMap;

use serde_json::Value;

use crate::error::Error;
use crate::geometry::Point2;
use crate::graph::{NodeId, RoadGraph};
use crate::scalar::Scalar;
use crate::Result;

/// Result of a network import.
#[derive(Debug, Clone)]
pub struct OsmImport<S> {
    pub graph: RoadGraph<S>,
    /// Features that were not LineString / MultiLineString (or were
    /// degenerate) and got skipped.
    pub skipped_features: usize,
}

/// Snaps endpoints to already-created nodes within a tolerance, using a
/// uniform grid so lookup stays linear in the feature count.
struct NodeSnapper<S> {
    tolerance: S,
    cells: HashMap<(i64, i64), Vec<NodeId>>,
}

impl<S: Scalar> NodeSnapper<S> {
    fn new(tolerance: S) -> Self {
        NodeSnapper {
            tolerance,
            cells: HashMap::new(),
        }
    }

    fn cell(&self, p: Point2<S>) -> (i64, i64) {
        let c = self.tolerance.max(S::of(1e-12));
        (
            (p.x / c).floor().to_i64().unwrap_or(0),
            (p.y / c).floor().to_i64().unwrap_or(0),
        )
    }

    fn snap(&mut self, graph: &mut RoadGraph<S>, p: Point2<S>) -> NodeId {
        let (cx, cy) = self.cell(p);
        let mut best: Option<(NodeId, S)> = None;
        for dy in -1..=1 {
            for dx in -1..=1 {
                let Some(ids) = self.cells.get(&(cx + dx, cy + dy)) else {
                    continue;
                };
                for &id in ids {
                    let d = graph.node(id).position.distance(p);
                    if d <= self.tolerance && best.is_none_or(|(_, bd)| d < bd) {
                        best = Some((id, d));
                    }
                }
            }
        }
        if let Some((id, _)) = best {
            return id;
        }
        let id = graph.add_node(p);
        self.cells.entry((cx, cy)).or_default().push(id);
        id
    }
}

fn coordinate_pair<S: Scalar>(value: &Value) -> Result<Point2<S>> {
    let arr = value
        .as_array()
        .ok_or_else(|| Error::MalformedDocument("coordinate is not an array".into()))?;
    if arr.len() < 2 {
        return Err(Error::MalformedDocument(
            "coordinate has fewer than 2 components".into(),
        ));
    }
    let x = arr[0]
        .as_f64()
        .ok_or_else(|| Error::MalformedDocument("coordinate x is not a number".into()))?;
    let y = arr[1]
        .as_f64()
        .ok_or_else(|| Error::MalformedDocument("coordinate y is not a number".into()))?;
    Ok(Point2::new(S::of(x), S::of(y)))
}

fn line_string<S: Scalar>(coords: &Value) -> Result<Vec<Point2<S>>> {
    coords
        .as_array()
        .ok_or_else(|| Error::MalformedDocument("LineString coordinates not an array".into()))?
        .iter()
        .map(coordinate_pair)
        .collect()
}

/// Parses a GeoJSON FeatureCollection into a road graph.
///
/// Every LineString (and every part of a MultiLineString) becomes an edge;
/// endpoints within `snap_tolerance` world units of an existing node merge
/// into it. Other geometry types are skipped and counted. Coordinates are
/// taken as already being in the working planar frame.
pub fn load_osm_roads<S: Scalar>(document: &str, snap_tolerance: S) -> Result<OsmImport<S>> {
    let root: Value = serde_json::from_str(document)
        .map_err(|e| Error::MalformedDocument(e.to_string()))?;
    load_osm_roads_value(&root, snap_tolerance)
}

/// [`load_osm_roads`] over an already-parsed JSON value.
pub fn load_osm_roads_value<S: Scalar>(root: &Value, snap_tolerance: S) -> Result<OsmImport<S>> {
    if root.get("type").and_then(Value::as_str) != Some("FeatureCollection") {
        return Err(Error::MalformedDocument(
            "document is not a FeatureCollection".into(),
        ));
    }
    let features = root
        .get("features")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::MalformedDocument("missing features array".into()))?;

    let mut graph = RoadGraph::new();
    let mut snapper = NodeSnapper::new(snap_tolerance);
    let mut skipped = 0usize;

    for feature in features {
        let geometry = feature.get("geometry");
        let Some(geometry) = geometry.filter(|g| !g.is_null()) else {
            skipped += 1;
            continue;
        };
        let kind = geometry.get("type").and_then(Value::as_str).unwrap_or("");
        let coords = geometry.get("coordinates").unwrap_or(&Value::Null);
        let lines: Vec<Vec<Point2<S>>> = match kind {
            "LineString" => vec![line_string(coords)?],
            "MultiLineString" => coords
                .as_array()
                .ok_or_else(|| {
                    Error::MalformedDocument("MultiLineString coordinates not an array".into())
                })?
                .iter()
                .map(line_string)
                .collect::<Result<_>>()?,
            _ => {
                skipped += 1;
                continue;
            }
        };
        for line in lines {
            if line.len() < 2 {
                skipped += 1;
                continue;
            }
            let a = snapper.snap(&mut graph, line[0]);
            let b = snapper.snap(&mut graph, *line.last().unwrap());
            // polyline ends exactly on the snapped node positions
            let mut polyline = line;
            polyline[0] = graph.node(a).position;
            let last = polyline.len() - 1;
            polyline[last] = graph.node(b).position;
            graph.add_edge(a, b, polyline);
        }
    }

    if graph.edge_count() == 0 {
        return Err(Error::EmptyNetwork);
    }
    Ok(OsmImport {
        graph,
        skipped_features: skipped,
    })
}
