//! Tracing a one-pixel skeleton into a spatial road graph.
//!
//! Node pixels are the skeleton pixels whose 8-neighbor count differs
//! from 2: junctions (>= 3), endpoints (1) and isolated pixels (0).
//! Adjacent junction pixels collapse into a single node at their centroid,
//! since thinning tends to leave small junction clusters. Maximal chains of
//! degree-2 pixels between node pixels become edges; chains with no node
//! pixel at all are closed rings and get a deterministic anchor node at
//! their lexicographically smallest (row, col) pixel.

use std::collections::HashMap;

use crate::geometry::Point2;
use crate::graph::{NodeId, RoadGraph};
use crate::raster::{BinaryMask, GeoTransform};
use crate::scalar::Scalar;
use crate::skeleton::Skeleton;

/// Neighbor offsets in deterministic scan order (row-major).
const DIRS: [(isize, isize); 8] = [
    (-1, -1),
    (0, -1),
    (1, -1),
    (-1, 0),
    (1, 0),
    (-1, 1),
    (0, 1),
    (1, 1),
];

struct Tracer<'a, S> {
    mask: &'a BinaryMask<S>,
    geo: &'a GeoTransform<S>,
    counts: Vec<u8>,
    /// NodeId per node pixel (junction-cluster pixels share one id).
    pixel_node: HashMap<(usize, usize), NodeId>,
    chain_visited: Vec<bool>,
    graph: RoadGraph<S>,
}

impl<'a, S: Scalar> Tracer<'a, S> {
    fn idx(&self, x: usize, y: usize) -> usize {
        y * self.mask.width() + x
    }

    fn mark_visited(&mut self, x: usize, y: usize) {
        let i = self.idx(x, y);
        self.chain_visited[i] = true;
    }

    fn count(&self, x: usize, y: usize) -> u8 {
        self.counts[y * self.mask.width() + x]
    }

    fn is_node_pixel(&self, x: usize, y: usize) -> bool {
        self.mask.get(x, y) && self.count(x, y) != 2
    }

    fn build_nodes(&mut self) {
        // entities keyed by smallest (row, col) member for deterministic ids
        type Entity = ((usize, usize), Vec<(usize, usize)>);
        let mut entities: Vec<Entity> = Vec::new();
        let mut clustered = vec![false; self.counts.len()];

        for y in 0..self.mask.height() {
            for x in 0..self.mask.width() {
                if !self.mask.get(x, y) || clustered[self.idx(x, y)] {
                    continue;
                }
                let c = self.count(x, y);
                if c == 2 {
                    continue;
                }
                if c >= 3 {
                    // flood the junction cluster over 8-adjacent >=3 pixels
                    let mut member_list = vec![(x, y)];
                    let mut stack = vec![(x, y)];
                    clustered[self.idx(x, y)] = true;
                    while let Some((cx, cy)) = stack.pop() {
                        for (dx, dy) in DIRS {
                            let (nx, ny) = (cx as isize + dx, cy as isize + dy);
                            if nx < 0 || ny < 0 {
                                continue;
                            }
                            let (nx, ny) = (nx as usize, ny as usize);
                            if nx >= self.mask.width() || ny >= self.mask.height() {
                                continue;
                            }
                            if self.mask.get(nx, ny)
                                && self.count(nx, ny) >= 3
                                && !clustered[self.idx(nx, ny)]
                            {
                                clustered[self.idx(nx, ny)] = true;
                                member_list.push((nx, ny));
                                stack.push((nx, ny));
                            }
                        }
                    }
                    // scan order makes (x, y) the smallest member already
                    entities.push(((y, x), member_list));
                } else {
                    entities.push(((y, x), vec![(x, y)]));
                }
            }
        }

        entities.sort_by_key(|(key, _)| *key);
        for (_, members) in entities {
            let mut sum = Point2::new(S::zero(), S::zero());
            for &(px, py) in &members {
                sum = sum + self.geo.pixel_center(px, py);
            }
            let n = S::of(members.len() as f64);
            let id = self
                .graph
                .add_node(Point2::new(sum.x / n, sum.y / n));
            for member in members {
                self.pixel_node.insert(member, id);
            }
        }
    }

    /// Walks a degree-2 chain starting at `first` (entered from node pixel
    /// `from`); returns the interior pixels and the terminating node pixel.
    fn walk_chain(
        &mut self,
        from: (usize, usize),
        first: (usize, usize),
    ) -> (Vec<(usize, usize)>, (usize, usize)) {
        let mut path = vec![first];
        self.mark_visited(first.0, first.1);
        let mut prev = from;
        let mut cur = first;
        loop {
            let mut next = None;
            for (dx, dy) in DIRS {
                let (nx, ny) = (cur.0 as isize + dx, cur.1 as isize + dy);
                if nx < 0 || ny < 0 {
                    continue;
                }
                let cand = (nx as usize, ny as usize);
                if cand.0 >= self.mask.width() || cand.1 >= self.mask.height() {
                    continue;
                }
                if cand != prev && self.mask.get(cand.0, cand.1) {
                    next = Some(cand);
                    break;
                }
            }
            let next = next.expect("degree-2 chain pixel has a continuation");
            if self.is_node_pixel(next.0, next.1) {
                return (path, next);
            }
            self.mark_visited(next.0, next.1);
            path.push(next);
            prev = cur;
            cur = next;
        }
    }

    fn emit_edge(&mut self, a: NodeId, b: NodeId, interior: &[(usize, usize)]) {
        let mut polyline = Vec::with_capacity(interior.len() + 2);
        polyline.push(self.graph.node(a).position);
        for &(px, py) in interior {
            polyline.push(self.geo.pixel_center(px, py));
        }
        polyline.push(self.graph.node(b).position);
        self.graph.add_edge(a, b, polyline);
    }

    fn trace_edges(&mut self) {
        let mut direct_seen: std::collections::HashSet<(NodeId, NodeId)> =
            std::collections::HashSet::new();
        for y in 0..self.mask.height() {
            for x in 0..self.mask.width() {
                if !self.is_node_pixel(x, y) {
                    continue;
                }
                let p_node = self.pixel_node[&(x, y)];
                for (dx, dy) in DIRS {
                    let (nx, ny) = (x as isize + dx, y as isize + dy);
                    if nx < 0 || ny < 0 {
                        continue;
                    }
                    let q = (nx as usize, ny as usize);
                    if q.0 >= self.mask.width() || q.1 >= self.mask.height() {
                        continue;
                    }
                    if !self.mask.get(q.0, q.1) {
                        continue;
                    }
                    if self.is_node_pixel(q.0, q.1) {
                        let q_node = self.pixel_node[&q];
                        if q_node == p_node {
                            continue; // same junction cluster
                        }
                        let key = (p_node.min(q_node), p_node.max(q_node));
                        if direct_seen.insert(key) {
                            self.emit_edge(p_node, q_node, &[]);
                        }
                    } else if !self.chain_visited[self.idx(q.0, q.1)] {
                        let (path, end) = self.walk_chain((x, y), q);
                        let end_node = self.pixel_node[&end];
                        self.emit_edge(p_node, end_node, &path);
                    }
                }
            }
        }
    }

    /// Remaining unvisited degree-2 pixels form closed rings: anchor each at
    /// its smallest (row, col) pixel and emit one self-loop edge.
    fn trace_rings(&mut self) {
        for y in 0..self.mask.height() {
            for x in 0..self.mask.width() {
                if !self.mask.get(x, y)
                    || self.count(x, y) != 2
                    || self.chain_visited[self.idx(x, y)]
                    || self.is_node_pixel(x, y)
                {
                    continue;
                }
                // row-major scan hits the smallest member first, so (x, y)
                // is the anchor of this ring
                let anchor = (x, y);
                let anchor_node = self.graph.add_node(self.geo.pixel_center(x, y));
                self.pixel_node.insert(anchor, anchor_node);
                self.mark_visited(x, y);

                // enter the ring through the first neighbor in scan order
                let mut first = None;
                for (dx, dy) in DIRS {
                    let (nx, ny) = (x as isize + dx, y as isize + dy);
                    if nx < 0 || ny < 0 {
                        continue;
                    }
                    let cand = (nx as usize, ny as usize);
                    if cand.0 < self.mask.width()
                        && cand.1 < self.mask.height()
                        && self.mask.get(cand.0, cand.1)
                    {
                        first = Some(cand);
                        break;
                    }
                }
                let first = first.expect("ring pixel has two neighbors");
                let mut interior = vec![first];
                self.mark_visited(first.0, first.1);
                let mut prev = anchor;
                let mut cur = first;
                loop {
                    let mut next = None;
                    for (dx, dy) in DIRS {
                        let (nx, ny) = (cur.0 as isize + dx, cur.1 as isize + dy);
                        if nx < 0 || ny < 0 {
                            continue;
                        }
                        let cand = (nx as usize, ny as usize);
                        if cand.0 >= self.mask.width() || cand.1 >= self.mask.height() {
                            continue;
                        }
                        if cand != prev && self.mask.get(cand.0, cand.1) {
                            next = Some(cand);
                            break;
                        }
                    }
                    let next = next.expect("ring pixel has a continuation");
                    if next == anchor {
                        break;
                    }
                    self.mark_visited(next.0, next.1);
                    interior.push(next);
                    prev = cur;
                    cur = next;
                }
                self.emit_edge(anchor_node, anchor_node, &interior);
            }
        }
    }
}

/// Converts a skeleton into a road graph in world coordinates. Applies no
/// spur pruning; see [`extract_graph_pruned`].
pub fn extract_graph<S: Scalar>(skel: &Skeleton<S>, geo: &GeoTransform<S>) -> RoadGraph<S> {
    let mask = skel.mask();
    let mut counts = vec![0u8; mask.width() * mask.height()];
    for y in 0..mask.height() {
        for x in 0..mask.width() {
            if mask.get(x, y) {
                counts[y * mask.width() + x] = mask.neighbor_count(x, y) as u8;
            }
        }
    }
    let mut tracer = Tracer {
        mask,
        geo,
        counts,
        pixel_node: HashMap::new(),
        chain_visited: vec![false; mask.width() * mask.height()],
        graph: RoadGraph::new(),
    };
    tracer.build_nodes();
    tracer.trace_edges();
    tracer.trace_rings();
    tracer.graph
}

/// [`extract_graph`] followed by one spur-pruning pass.
///
/// A spur is a thinning artifact: a short whisker hanging off a junction.
/// Pruned edges are non-loops shorter than `min_spur_px` pixels with a
/// degree-1 node on one end and a degree >= 3 node on the other; isolated
/// short components and the end pieces of plain paths are real geometry
/// and stay. Orphaned nodes are dropped with their edge.
pub fn extract_graph_pruned<S: Scalar>(
    skel: &Skeleton<S>,
    geo: &GeoTransform<S>,
    min_spur_px: f64,
) -> RoadGraph<S> {
    let full = extract_graph(skel, geo);
    if min_spur_px <= 0.0 {
        return full;
    }
    let min_len = S::of(min_spur_px) * geo.pixel_size_x;

    let mut degree = vec![0usize; full.nodes.len()];
    for e in &full.edges {
        degree[e.node_a.0] += 1;
        if e.node_a != e.node_b {
            degree[e.node_b.0] += 1;
        }
    }
    let keep_edge: Vec<bool> = full
        .edges
        .iter()
        .map(|e| {
            let (da, db) = (degree[e.node_a.0], degree[e.node_b.0]);
            let spur = e.node_a != e.node_b
                && e.length < min_len
                && ((da == 1 && db >= 3) || (db == 1 && da >= 3));
            !spur
        })
        .collect();

    // nodes survive if an edge still touches them, or they were isolated
    // pixels to begin with
    let mut node_keep = vec![false; full.nodes.len()];
    for (e, keep) in full.edges.iter().zip(&keep_edge) {
        if *keep {
            node_keep[e.node_a.0] = true;
            node_keep[e.node_b.0] = true;
        }
    }
    for (i, d) in degree.iter().enumerate() {
        if *d == 0 {
            node_keep[i] = true;
        }
    }

    let mut remap = vec![None; full.nodes.len()];
    let mut pruned = RoadGraph::new();
    for (i, node) in full.nodes.iter().enumerate() {
        if node_keep[i] {
            remap[i] = Some(pruned.add_node(node.position));
        }
    }
    for (e, keep) in full.edges.iter().zip(&keep_edge) {
        if *keep {
            let a = remap[e.node_a.0].expect("endpoint kept");
            let b = remap[e.node_b.0].expect("endpoint kept");
            pruned.add_edge(a, b, e.polyline.clone());
        }
    }
    pruned
}
