//! Subcommand implementations behind the clap surface.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use roadchange::compare::{rdp_simplify, segment_metrics, slice_segments};
use roadchange::geometry::Point2;
use roadchange::graph::WeightedGraph;
use roadchange::io::{
    heatmap_to_csv, load_probability_mask, road_graph_from_geojson, road_graph_to_geojson,
    weighted_graph_from_costed_geojson, write_heatmap_pgm, SCHEMA_VERSION,
};
use roadchange::raster::{dilate, heatmap};
use roadchange::route::{connectivity_metrics, sample_pairs, shortest_path, ConnectivityParams};
use roadchange::skeleton::{extract_graph_pruned, skeletonize};
use roadchange::{RoadGraph64, WeightedGraph64};

use crate::config::{ConfigOverrides, PipelineConfig};
use crate::error::CliError;
use crate::pipeline::run_pipeline;
use crate::scene::{generate_scene, SceneSpec};

#[derive(Parser)]
#[command(
    name = "roadchange",
    about = "Road change detection and damage-weighted routing",
    version
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

/// Config-affecting flags shared by the subcommands (flag > file > default).
#[derive(Args, Debug, Default)]
pub struct ConfigFlags {
    /// JSON config file
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Probability threshold for road pixels
    #[arg(long)]
    pub threshold: Option<f64>,
    /// Mask dilation radius, pixels
    #[arg(long)]
    pub dilation_radius: Option<usize>,
    /// Minimum change width, pixels
    #[arg(long)]
    pub min_width: Option<usize>,
    /// Registration search radius, pixels
    #[arg(long)]
    pub search_radius: Option<usize>,
    /// RDP simplification tolerance, world units
    #[arg(long)]
    pub rdp_epsilon: Option<f64>,
    /// Sub-segment slice length, world units
    #[arg(long)]
    pub slice_length: Option<f64>,
    /// Maximum damage assignment distance, world units
    #[arg(long)]
    pub max_assign_dist: Option<f64>,
    /// Impact factor: a number >= 1 or "inf"
    #[arg(long)]
    pub alpha: Option<String>,
    /// Lower clamp of the assignment distance
    #[arg(long)]
    pub d_min: Option<f64>,
    /// Heatmap cell size, pixels
    #[arg(long)]
    pub heatmap_cell: Option<usize>,
    /// Too-short path ratio
    #[arg(long)]
    pub ratio_low: Option<f64>,
    /// Too-long path ratio
    #[arg(long)]
    pub ratio_high: Option<f64>,
    /// Connectivity pair count
    #[arg(long)]
    pub pair_count: Option<usize>,
    /// Random seed
    #[arg(long)]
    pub seed: Option<u64>,
    /// Skeleton spur pruning length, pixels (0 disables)
    #[arg(long)]
    pub min_spur_px: Option<f64>,
    /// Network endpoint snap tolerance, world units
    #[arg(long)]
    pub snap_tolerance: Option<f64>,
    /// Node mapping tolerance for connectivity, world units
    #[arg(long)]
    pub node_map_tolerance: Option<f64>,
    /// Minimum pair separation, world units
    #[arg(long)]
    pub pair_min_separation: Option<f64>,
    /// Scene raster resolution, world units per pixel
    #[arg(long)]
    pub pixel_size: Option<f64>,
}

impl ConfigFlags {
    pub fn resolve(&self) -> Result<PipelineConfig, CliError> {
        let overrides = ConfigOverrides {
            threshold: self.threshold,
            dilation_radius: self.dilation_radius,
            min_width: self.min_width,
            search_radius: self.search_radius,
            rdp_epsilon: self.rdp_epsilon,
            slice_length: self.slice_length,
            max_assign_dist: self.max_assign_dist,
            alpha: self.alpha.clone(),
            d_min: self.d_min,
            heatmap_cell: self.heatmap_cell,
            ratio_low: self.ratio_low,
            ratio_high: self.ratio_high,
            pair_count: self.pair_count,
            seed: self.seed,
            min_spur_px: self.min_spur_px,
            snap_tolerance: self.snap_tolerance,
            node_map_tolerance: self.node_map_tolerance,
            pair_min_separation: self.pair_min_separation,
            pixel_size: self.pixel_size,
        };
        PipelineConfig::resolve(self.config.as_deref(), &overrides)
    }
}

#[derive(Subcommand)]
pub enum Command {
    /// Full chain: masks + prior network -> diff graph, costed network,
    /// heatmap, manifest
    Run {
        /// Pre-event probability mask (.pgm or .png)
        #[arg(long)]
        pre: PathBuf,
        /// Post-event probability mask (.pgm or .png)
        #[arg(long)]
        post: PathBuf,
        /// Prior road network GeoJSON (planar coordinates)
        #[arg(long)]
        osm: PathBuf,
        /// Output directory
        #[arg(long)]
        out: PathBuf,
        #[command(flatten)]
        flags: ConfigFlags,
    },
    /// Convert one road mask into a road graph GeoJSON
    Extract {
        /// Probability mask (.pgm or .png)
        #[arg(long)]
        mask: PathBuf,
        /// Output graph GeoJSON path
        #[arg(long)]
        out: PathBuf,
        #[command(flatten)]
        flags: ConfigFlags,
    },
    /// Register two masks and write the cleaned change mask
    Diff {
        #[arg(long)]
        pre: PathBuf,
        #[arg(long)]
        post: PathBuf,
        /// Output directory (diff_mask.pgm, registration.json)
        #[arg(long)]
        out: PathBuf,
        #[command(flatten)]
        flags: ConfigFlags,
    },
    /// Locate a difference graph on the prior network and emit the costed
    /// network
    Fuse {
        /// Difference graph GeoJSON (as written by `run` / `extract`)
        #[arg(long)]
        diff_graph: PathBuf,
        /// Prior road network GeoJSON
        #[arg(long)]
        osm: PathBuf,
        /// Output costed-network GeoJSON path
        #[arg(long)]
        out: PathBuf,
        #[command(flatten)]
        flags: ConfigFlags,
    },
    /// Shortest path between two coordinates over a (costed) network
    Route {
        /// Costed-network or plain road-graph GeoJSON
        #[arg(long)]
        graph: PathBuf,
        /// Source "x,y" in world units
        #[arg(long)]
        src: String,
        /// Destination "x,y" in world units
        #[arg(long)]
        dst: String,
        /// Output JSON path (stdout when omitted)
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        flags: ConfigFlags,
    },
    /// Sub-segment precision/recall/F-score of one graph against another
    EvalSegments {
        /// Predicted road graph GeoJSON
        #[arg(long)]
        pred: PathBuf,
        /// Ground truth road graph GeoJSON
        #[arg(long)]
        truth: PathBuf,
        /// Output JSON path (stdout when omitted)
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        flags: ConfigFlags,
    },
    /// Four-way connectivity comparison over sampled node pairs
    EvalConnectivity {
        /// Predicted network GeoJSON (costed documents respect removals)
        #[arg(long)]
        pred: PathBuf,
        /// Ground truth road graph GeoJSON
        #[arg(long)]
        truth: PathBuf,
        /// Output JSON path (stdout when omitted)
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        flags: ConfigFlags,
    },
    /// Grid-summed heatmap of a change mask (CSV + scaled PGM)
    Heatmap {
        /// Change mask (.pgm or .png)
        #[arg(long)]
        mask: PathBuf,
        /// Output directory (heatmap.csv, heatmap.pgm)
        #[arg(long)]
        out: PathBuf,
        #[command(flatten)]
        flags: ConfigFlags,
    },
    /// Generate a synthetic test scene
    GenScene {
        /// Output directory
        #[arg(long)]
        out: PathBuf,
        /// Junctions per grid side
        #[arg(long, default_value_t = 8)]
        grid: usize,
        /// Fraction of damaged edges
        #[arg(long, default_value_t = 0.1)]
        damage: f64,
        /// Pixel noise probability
        #[arg(long, default_value_t = 0.0)]
        noise: f64,
        /// Junction spacing, world units
        #[arg(long, default_value_t = 60.0)]
        spacing: f64,
        #[command(flatten)]
        flags: ConfigFlags,
    },
}

fn parse_point(text: &str) -> Result<Point2<f64>, CliError> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 2 {
        return Err(CliError::parse(format!("expected \"x,y\", got {text:?}")));
    }
    let x: f64 = parts[0]
        .trim()
        .parse()
        .map_err(|_| CliError::parse(format!("bad x coordinate in {text:?}")))?;
    let y: f64 = parts[1]
        .trim()
        .parse()
        .map_err(|_| CliError::parse(format!("bad y coordinate in {text:?}")))?;
    Ok(Point2::new(x, y))
}

fn read_text(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::io(format!("{}: {e}", path.display())))
}

fn load_graph(path: &Path, snap_tolerance: f64) -> Result<RoadGraph64, CliError> {
    let text = read_text(path)?;
    Ok(road_graph_from_geojson(&text, snap_tolerance)?.graph)
}

/// Loads a network for routing; documents with an `alpha` member are treated
/// as costed (removals dropped, weights = cost * length), anything else as
/// a plain length-weighted graph.
fn load_weighted(path: &Path, snap_tolerance: f64) -> Result<WeightedGraph64, CliError> {
    let text = read_text(path)?;
    let value: serde_json::Value = serde_json::from_str(&text)
        .map_err(|e| CliError::parse(format!("{}: {e}", path.display())))?;
    if value.get("alpha").is_some() {
        Ok(weighted_graph_from_costed_geojson(&text, snap_tolerance)?)
    } else {
        let graph = road_graph_from_geojson(&text, snap_tolerance)?.graph;
        Ok(WeightedGraph::by_length(graph))
    }
}

fn emit_report(out: Option<&Path>, value: &serde_json::Value) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(value).map_err(roadchange::Error::from)?;
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => println!("{text}"),
    }
    Ok(())
}

/// Graph extraction used by the `extract` subcommand: threshold, dilate,
/// thin, trace, prune.
fn mask_to_graph(
    mask_path: &Path,
    config: &PipelineConfig,
) -> Result<RoadGraph64, CliError> {
    let prob = load_probability_mask::<f64>(mask_path)?;
    let binary = prob.threshold(config.threshold);
    let dilated = dilate(&binary, config.dilation_radius);
    let skeleton = skeletonize(&dilated);
    Ok(extract_graph_pruned(
        &skeleton,
        &dilated.geo,
        config.min_spur_px,
    ))
}

pub fn execute(command: Command) -> Result<(), CliError> {
    match command {
        Command::Run {
            pre,
            post,
            osm,
            out,
            flags,
        } => {
            let config = flags.resolve()?;
            let summary = run_pipeline(&config, &pre, &post, &osm, &out)?;
            eprintln!(
                "run complete: {} diff segments, {} flagged edges, artifacts in {}",
                summary.diff_segments.len(),
                summary.flagged_edges.len(),
                out.display()
            );
            Ok(())
        }
        Command::Extract { mask, out, flags } => {
            let config = flags.resolve()?;
            let graph = mask_to_graph(&mask, &config)?;
            let doc = road_graph_to_geojson(&graph);
            std::fs::write(
                &out,
                serde_json::to_string_pretty(&doc).map_err(roadchange::Error::from)?,
            )?;
            eprintln!(
                "extracted {} nodes / {} edges to {}",
                graph.node_count(),
                graph.edge_count(),
                out.display()
            );
            Ok(())
        }
        Command::Diff {
            pre,
            post,
            out,
            flags,
        } => {
            let config = flags.resolve()?;
            let pre_prob = load_probability_mask::<f64>(&pre)?;
            let post_prob = load_probability_mask::<f64>(&post)?;
            let pre_bin = pre_prob.threshold(config.threshold);
            let post_bin = post_prob.threshold(config.threshold);
            let offset =
                roadchange::raster::register(&pre_bin, &post_bin, config.search_radius)?;
            let aligned = post_bin.translated(-offset.dx as isize, -offset.dy as isize);
            let diff = roadchange::raster::diff_masks(
                &dilate(&pre_bin, config.dilation_radius),
                &dilate(&aligned, config.dilation_radius),
            )?;
            let cleaned = roadchange::raster::clean_diff(&diff, config.min_width);
            std::fs::create_dir_all(&out)?;
            roadchange::io::save_binary_mask(&out.join("diff_mask.pgm"), &cleaned)?;
            let registration = json!({
                "schema_version": SCHEMA_VERSION,
                "dx": offset.dx,
                "dy": offset.dy,
                "score": offset.score,
                "changed_pixels": cleaned.count_ones(),
            });
            std::fs::write(
                out.join("registration.json"),
                serde_json::to_string_pretty(&registration).map_err(roadchange::Error::from)?,
            )?;
            Ok(())
        }
        Command::Fuse {
            diff_graph,
            osm,
            out,
            flags,
        } => {
            let config = flags.resolve()?;
            let diff = load_graph(&diff_graph, config.snap_tolerance)?;
            let osm_graph = load_graph(&osm, config.snap_tolerance)?;
            let simplified = rdp_simplify(&diff, config.rdp_epsilon);
            let segments = slice_segments(&simplified, config.slice_length);
            let report = roadchange::fusion::assign_damage(
                &segments,
                &osm_graph,
                config.max_assign_dist,
                config.d_min,
            );
            let costed = roadchange::fusion::apply_damage_costs(
                &osm_graph,
                &report.assignments,
                config.alpha.0,
            );
            let doc = roadchange::io::costed_graph_to_geojson(&costed);
            std::fs::write(
                &out,
                serde_json::to_string_pretty(&doc).map_err(roadchange::Error::from)?,
            )?;
            eprintln!(
                "fused {} segments onto {} edges ({} removed)",
                segments.len(),
                osm_graph.edge_count(),
                costed.removed.len()
            );
            Ok(())
        }
        Command::Route {
            graph,
            src,
            dst,
            out,
            flags,
        } => {
            let config = flags.resolve()?;
            let wg = load_weighted(&graph, config.snap_tolerance)?;
            let src_point = parse_point(&src)?;
            let dst_point = parse_point(&dst)?;
            let near = |p: Point2<f64>| -> Result<_, CliError> {
                wg.graph
                    .nearest_node(p)
                    .map(|(id, _)| id)
                    .ok_or_else(|| CliError::from(roadchange::Error::EmptyNetwork))
            };
            let result = shortest_path(&wg, near(src_point)?, near(dst_point)?)?;
            let nodes: Vec<_> = result
                .node_sequence
                .iter()
                .map(|n| {
                    let p = wg.graph.node(*n).position;
                    json!([p.x, p.y])
                })
                .collect();
            let doc = json!({
                "schema_version": SCHEMA_VERSION,
                "status": match result.status {
                    roadchange::route::PathStatus::Found => "Found",
                    roadchange::route::PathStatus::NoPath => "NoPath",
                },
                "total_weight": result.total_weight,
                "node_ids": result.node_sequence.iter().map(|n| n.0).collect::<Vec<_>>(),
                "nodes": nodes,
            });
            emit_report(out.as_deref(), &doc)
        }
        Command::EvalSegments {
            pred,
            truth,
            out,
            flags,
        } => {
            let config = flags.resolve()?;
            let pred_graph = load_graph(&pred, config.snap_tolerance)?;
            let truth_graph = load_graph(&truth, config.snap_tolerance)?;
            let slice = |g: &RoadGraph64| {
                slice_segments(&rdp_simplify(g, config.rdp_epsilon), config.slice_length)
            };
            let metrics = segment_metrics(&slice(&pred_graph), &slice(&truth_graph))?;
            let mut doc = serde_json::to_value(metrics).map_err(roadchange::Error::from)?;
            doc["schema_version"] = json!(SCHEMA_VERSION);
            emit_report(out.as_deref(), &doc)
        }
        Command::EvalConnectivity {
            pred,
            truth,
            out,
            flags,
        } => {
            let config = flags.resolve()?;
            let pred_wg = load_weighted(&pred, config.snap_tolerance)?;
            let truth_graph = load_graph(&truth, config.snap_tolerance)?;
            let pairs = sample_pairs(
                &truth_graph,
                config.pair_count,
                config.seed,
                config.pair_min_separation,
            )?;
            let truth_wg = WeightedGraph::by_length(truth_graph);
            let report = connectivity_metrics(
                &pred_wg,
                &truth_wg,
                &pairs,
                &ConnectivityParams {
                    ratio_low: config.ratio_low,
                    ratio_high: config.ratio_high,
                    map_tolerance: config.node_map_tolerance,
                },
            )?;
            let mut doc = serde_json::to_value(report).map_err(roadchange::Error::from)?;
            doc["schema_version"] = json!(SCHEMA_VERSION);
            emit_report(out.as_deref(), &doc)
        }
        Command::Heatmap { mask, out, flags } => {
            let config = flags.resolve()?;
            let prob = load_probability_mask::<f64>(&mask)?;
            let binary = prob.threshold(0.5);
            let grid = heatmap(&binary, config.heatmap_cell);
            std::fs::create_dir_all(&out)?;
            std::fs::write(out.join("heatmap.csv"), heatmap_to_csv(&grid))?;
            write_heatmap_pgm(&out.join("heatmap.pgm"), &grid)?;
            Ok(())
        }
        Command::GenScene {
            out,
            grid,
            damage,
            noise,
            spacing,
            flags,
        } => {
            let config = flags.resolve()?;
            if !(0.0..=1.0).contains(&damage) {
                return Err(CliError::parse("--damage must be in [0, 1]".to_string()));
            }
            let spec = SceneSpec {
                grid_dim: grid,
                spacing,
                damage_fraction: damage,
                noise,
                seed: config.seed,
                pixel_size: config.pixel_size,
                buffer: 2.0,
                blur: true,
            };
            let scene = generate_scene(&spec);
            scene.write_to(&out, &spec)?;
            eprintln!(
                "scene written to {}: {} edges, {} damaged",
                out.display(),
                scene.truth_pre.edge_count(),
                scene.damaged_edges.len()
            );
            Ok(())
        }
    }
}

/// Used by tests to observe the flagged-edge set without rerunning.
pub fn flagged_from_manifest(manifest: &serde_json::Value) -> BTreeSet<usize> {
    manifest["network"]["flagged_edges"]
        .as_array()
        .map(|a| a.iter().filter_map(|v| v.as_u64().map(|u| u as usize)).collect())
        .unwrap_or_default()
}
