//! Seed-deterministic synthetic scenes for pipeline testing.
//!
//! A scene is a grid road network, a copy with random sub-spans of some
//! edges deleted (the damage), and pre/post probability masks rendered from
//! the two graphs with optional pixel noise and blur.

use std::collections::BTreeSet;
use std::path::Path;

use rand::{Rng as _, SeedableRng as _};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use roadchange::geometry::Point2;
use roadchange::graph::NodeId;
use roadchange::io::{
    road_graph_to_geojson, save_probability_mask, write_json_report, SCHEMA_VERSION,
};
use roadchange::raster::rasterize_graph;
use roadchange::{BinaryMask64, GeoTransform64, ProbabilityMask64, Result, RoadGraph64};

use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SceneSpec {
    /// Junctions per side of the square grid.
    pub grid_dim: usize,
    /// Distance between neighboring junctions, world units.
    pub spacing: f64,
    /// Fraction of edges that get a damaged sub-span.
    pub damage_fraction: f64,
    /// Per-pixel probability of replacing a value with uniform noise.
    pub noise: f64,
    pub seed: u64,
    /// World units per pixel.
    pub pixel_size: f64,
    /// Rasterization buffer around centerlines, world units.
    pub buffer: f64,
    /// Apply a 3x3 box blur to the probability masks.
    pub blur: bool,
}

impl Default for SceneSpec {
    fn default() -> Self {
        SceneSpec {
            grid_dim: 8,
            spacing: 60.0,
            damage_fraction: 0.1,
            noise: 0.0,
            seed: 0,
            pixel_size: 0.5,
            buffer: 2.0,
            blur: true,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SyntheticScene {
    /// The full prior network; also serves as the OSM-style input.
    pub truth_pre: RoadGraph64,
    /// The prior network with damaged sub-spans removed.
    pub truth_post: RoadGraph64,
    /// Edge ids of `truth_pre` that received damage.
    pub damaged_edges: BTreeSet<usize>,
    pub pre_mask: ProbabilityMask64,
    pub post_mask: ProbabilityMask64,
    pub geo: GeoTransform64,
}

fn grid_graph(dim: usize, spacing: f64, margin: f64) -> RoadGraph64 {
    let mut g = RoadGraph64::new();
    for y in 0..dim {
        for x in 0..dim {
            g.add_node(Point2::new(
                margin + x as f64 * spacing,
                margin + y as f64 * spacing,
            ));
        }
    }
    for y in 0..dim {
        for x in 0..dim {
            let id = y * dim + x;
            if x + 1 < dim {
                let (a, b) = (NodeId(id), NodeId(id + 1));
                let (pa, pb) = (g.node(a).position, g.node(b).position);
                g.add_edge(a, b, vec![pa, pb]);
            }
            if y + 1 < dim {
                let (a, b) = (NodeId(id), NodeId(id + dim));
                let (pa, pb) = (g.node(a).position, g.node(b).position);
                g.add_edge(a, b, vec![pa, pb]);
            }
        }
    }
    g
}

/// Removes `[start, end]` fractions of a straight edge, returning the two
/// surviving pieces (either may be degenerate and skipped).
fn split_edge(
    post: &mut RoadGraph64,
    a: Point2<f64>,
    b: Point2<f64>,
    cut_start: f64,
    cut_end: f64,
) {
    let lerp = |t: f64| a + (b - a) * t;
    let pieces = [(0.0, cut_start), (cut_end, 1.0)];
    for (t0, t1) in pieces {
        if t1 - t0 < 1e-6 {
            continue;
        }
        let (p0, p1) = (lerp(t0), lerp(t1));
        let na = post.add_node(p0);
        let nb = post.add_node(p1);
        post.add_edge(na, nb, vec![p0, p1]);
    }
}

fn binary_to_probability(mask: &BinaryMask64) -> Vec<f64> {
    mask.bits().iter().map(|b| if *b { 1.0 } else { 0.0 }).collect()
}

fn apply_noise(values: &mut [f64], noise: f64, rng: &mut ChaCha8Rng) {
    if noise <= 0.0 {
        return;
    }
    for v in values.iter_mut() {
        if rng.gen_bool(noise) {
            *v = rng.gen_range(0.0..=1.0);
        }
    }
}

fn box_blur(values: &[f64], width: usize, height: usize) -> Vec<f64> {
    let mut out = vec![0.0; values.len()];
    for y in 0..height {
        for x in 0..width {
            let mut sum = 0.0;
            let mut n = 0.0;
            for dy in -1..=1isize {
                for dx in -1..=1isize {
                    let (nx, ny) = (x as isize + dx, y as isize + dy);
                    if nx >= 0 && ny >= 0 && (nx as usize) < width && (ny as usize) < height {
                        sum += values[ny as usize * width + nx as usize];
                        n += 1.0;
                    }
                }
            }
            out[y * width + x] = sum / n;
        }
    }
    out
}

/// Builds the scene. Fully deterministic in the spec (including `seed`).
pub fn generate_scene(spec: &SceneSpec) -> SyntheticScene {
    assert!((0.0..=1.0).contains(&spec.damage_fraction));
    assert!(spec.grid_dim >= 2, "grid needs at least 2x2 junctions");
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);

    let margin = 10.0_f64.max(4.0 * spec.buffer);
    let truth_pre = grid_graph(spec.grid_dim, spec.spacing, margin);

    // pick damaged edges: fisher-yates prefix of the edge index list
    let edge_count = truth_pre.edge_count();
    let damage_count =
        ((edge_count as f64) * spec.damage_fraction).round().min(edge_count as f64) as usize;
    let mut indices: Vec<usize> = (0..edge_count).collect();
    for i in 0..damage_count {
        let j = rng.gen_range(i..edge_count);
        indices.swap(i, j);
    }
    let damaged_edges: BTreeSet<usize> = indices[..damage_count].iter().copied().collect();

    // truth_post: undamaged edges copied, damaged ones lose a middle span
    let mut truth_post = RoadGraph64::new();
    for edge in &truth_pre.edges {
        let a = edge.polyline[0];
        let b = *edge.polyline.last().unwrap();
        if damaged_edges.contains(&edge.id.0) {
            let center = rng.gen_range(0.4..=0.6);
            let width = rng.gen_range(0.2..=0.4);
            split_edge(&mut truth_post, a, b, center - width / 2.0, center + width / 2.0);
        } else {
            let na = truth_post.add_node(a);
            let nb = truth_post.add_node(b);
            truth_post.add_edge(na, nb, vec![a, b]);
        }
    }

    // raster canvas covering the grid plus margins
    let world = 2.0 * margin + (spec.grid_dim - 1) as f64 * spec.spacing;
    let px = (world / spec.pixel_size).ceil() as usize;
    let geo = GeoTransform64::new(0.0, world, spec.pixel_size, spec.pixel_size);

    let render = |graph: &RoadGraph64, rng: &mut ChaCha8Rng| {
        let binary = rasterize_graph(graph, &geo, px, px, spec.buffer);
        let mut values = binary_to_probability(&binary);
        apply_noise(&mut values, spec.noise, rng);
        if spec.blur {
            values = box_blur(&values, px, px);
        }
        ProbabilityMask64::new(px, px, values, geo).expect("values stay in [0, 1]")
    };
    let pre_mask = render(&truth_pre, &mut rng);
    let post_mask = render(&truth_post, &mut rng);

    SyntheticScene {
        truth_pre,
        truth_post,
        damaged_edges,
        pre_mask,
        post_mask,
        geo,
    }
}

impl SyntheticScene {
    /// Writes the scene files: masks plus sidecars, the two truth graphs,
    /// the OSM-style network (identical to `truth_pre`) and the damage list.
    pub fn write_to(&self, dir: &Path, spec: &SceneSpec) -> Result<()> {
        std::fs::create_dir_all(dir)?;
        save_probability_mask(&dir.join("pre.pgm"), &self.pre_mask)?;
        save_probability_mask(&dir.join("post.pgm"), &self.post_mask)?;
        let write_graph = |name: &str, graph: &RoadGraph64| -> Result<()> {
            let doc = road_graph_to_geojson(graph);
            std::fs::write(dir.join(name), serde_json::to_string_pretty(&doc)?)?;
            Ok(())
        };
        write_graph("truth_pre.geojson", &self.truth_pre)?;
        write_graph("truth_post.geojson", &self.truth_post)?;
        write_graph("osm.geojson", &self.truth_pre)?;
        let damage = json!({
            "schema_version": SCHEMA_VERSION,
            "damaged_edge_ids": self.damaged_edges.iter().collect::<Vec<_>>(),
        });
        std::fs::write(
            dir.join("damaged_edges.json"),
            serde_json::to_string_pretty(&damage)?,
        )?;
        write_json_report(&dir.join("scene.json"), spec)?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_damage_produces_identical_masks() {
        let spec = SceneSpec {
            grid_dim: 3,
            spacing: 30.0,
            damage_fraction: 0.0,
            noise: 0.0,
            seed: 5,
            ..SceneSpec::default()
        };
        let scene = generate_scene(&spec);
        assert!(scene.damaged_edges.is_empty());
        assert_eq!(scene.pre_mask, scene.post_mask);
        assert_eq!(
            scene.truth_pre.total_length(),
            scene.truth_post.total_length()
        );
    }

    #[test]
    fn full_damage_on_every_edge() {
        let spec = SceneSpec {
            grid_dim: 2,
            spacing: 40.0,
            damage_fraction: 1.0,
            noise: 0.0,
            seed: 1,
            ..SceneSpec::default()
        };
        let scene = generate_scene(&spec);
        assert_eq!(scene.damaged_edges.len(), 4);
        assert!(scene.truth_post.total_length() < scene.truth_pre.total_length());
        // the post mask lost pixels along every damaged span
        let pre_bits = scene.pre_mask.threshold(0.5).count_ones();
        let post_bits = scene.post_mask.threshold(0.5).count_ones();
        assert!(post_bits < pre_bits);
    }

    #[test]
    fn same_seed_is_byte_identical() {
        let spec = SceneSpec {
            grid_dim: 4,
            damage_fraction: 0.2,
            noise: 0.02,
            seed: 7,
            ..SceneSpec::default()
        };
        let a = generate_scene(&spec);
        let b = generate_scene(&spec);
        assert_eq!(a.pre_mask, b.pre_mask);
        assert_eq!(a.post_mask, b.post_mask);
        assert_eq!(a.damaged_edges, b.damaged_edges);
        let other = generate_scene(&SceneSpec { seed: 8, ..spec });
        assert_ne!(a.damaged_edges, other.damaged_edges);
    }

    #[test]
    fn damage_spans_stay_in_the_middle() {
        let spec = SceneSpec {
            grid_dim: 5,
            damage_fraction: 0.3,
            seed: 3,
            ..SceneSpec::default()
        };
        let scene = generate_scene(&spec);
        // every truth_post node is within 30 m of some truth_pre node
        // (span boundaries fall in the middle 20-80% of 60 m edges)
        for node in &scene.truth_post.nodes {
            let (_, d) = scene.truth_pre.nearest_node(node.position).unwrap();
            assert!(d <= 30.0 + 1e-9, "split node {d} m from prior network");
        }
    }
}
