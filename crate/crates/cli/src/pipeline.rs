//! The end-to-end chain: masks in, costed road network and reports out.
//!
//! Stage order: threshold -> register -> dilate -> diff -> clean ->
//! skeletonize -> extract -> simplify/slice -> assign -> cost -> emit.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

use serde_json::json;

use roadchange::compare::{rdp_simplify, slice_segments};
use roadchange::fusion::{apply_damage_costs, assign_damage, load_osm_roads};
use roadchange::io::{
    costed_graph_to_geojson, fnv1a64_hex, heatmap_to_csv, load_probability_mask,
    road_graph_to_geojson, save_binary_mask, subsegments_to_geojson, write_heatmap_pgm,
    SCHEMA_VERSION,
};
use roadchange::raster::{clean_diff, diff_masks, dilate, heatmap, register};
use roadchange::skeleton::{extract_graph_pruned, skeletonize};
use roadchange::{CostedGraph64, RoadGraph64, SubSegmentSet64};

use crate::config::PipelineConfig;
use crate::error::CliError;

/// What a run produced, for callers that inspect results in-process.
#[derive(Debug)]
pub struct RunSummary {
    pub registration: (i64, i64, u64),
    pub diff_graph: RoadGraph64,
    pub diff_segments: SubSegmentSet64,
    /// Prior-network edge ids that received at least one damage assignment.
    pub flagged_edges: BTreeSet<usize>,
    pub unassigned_segments: usize,
    pub costed: CostedGraph64,
    pub artifacts: Vec<PathBuf>,
}

fn read_input(path: &Path) -> Result<Vec<u8>, CliError> {
    std::fs::read(path).map_err(|e| CliError::io(format!("{}: {e}", path.display())))
}

/// Runs the full pipeline and writes all artifacts into `out_dir`.
///
/// Inputs are read and parsed before anything is written, so a failed run
/// leaves no partial outputs.
pub fn run_pipeline(
    config: &PipelineConfig,
    pre_path: &Path,
    post_path: &Path,
    osm_path: &Path,
    out_dir: &Path,
) -> Result<RunSummary, CliError> {
    // ingest everything up front
    let pre_bytes = read_input(pre_path)?;
    let post_bytes = read_input(post_path)?;
    let osm_bytes = read_input(osm_path)?;
    let pre_prob = load_probability_mask::<f64>(pre_path)?;
    let post_prob = load_probability_mask::<f64>(post_path)?;
    let osm_text = String::from_utf8(osm_bytes.clone())
        .map_err(|_| CliError::parse(format!("{}: not utf-8", osm_path.display())))?;
    let osm = load_osm_roads::<f64>(&osm_text, config.snap_tolerance)?;

    // threshold -> register -> align -> dilate -> diff -> clean
    let pre_bin = pre_prob.threshold(config.threshold);
    let post_bin = post_prob.threshold(config.threshold);
    let offset = register(&pre_bin, &post_bin, config.search_radius)?;
    let post_aligned = post_bin.translated(-offset.dx as isize, -offset.dy as isize);
    let pre_dilated = dilate(&pre_bin, config.dilation_radius);
    let post_dilated = dilate(&post_aligned, config.dilation_radius);
    let diff = diff_masks(&pre_dilated, &post_dilated)?;
    let cleaned = clean_diff(&diff, config.min_width);

    // skeletonize -> extract -> simplify -> slice
    let skeleton = skeletonize(&cleaned);
    let diff_graph = extract_graph_pruned(&skeleton, &cleaned.geo, config.min_spur_px);
    let simplified = rdp_simplify(&diff_graph, config.rdp_epsilon);
    let diff_segments = slice_segments(&simplified, config.slice_length);

    // assign -> cost
    let report = assign_damage(
        &diff_segments,
        &osm.graph,
        config.max_assign_dist,
        config.d_min,
    );
    let costed = apply_damage_costs(&osm.graph, &report.assignments, config.alpha.0);
    let flagged_edges: BTreeSet<usize> =
        report.assignments.iter().map(|a| a.osm_edge.0).collect();

    // emit
    std::fs::create_dir_all(out_dir)?;
    let mut artifacts = Vec::new();

    let diff_mask_path = out_dir.join("diff_mask.pgm");
    save_binary_mask(&diff_mask_path, &cleaned)?;
    artifacts.push(diff_mask_path);
    artifacts.push(out_dir.join("diff_mask.geo.json"));

    let g_diff_path = out_dir.join("g_diff.geojson");
    std::fs::write(
        &g_diff_path,
        serde_json::to_string_pretty(&road_graph_to_geojson(&diff_graph))?,
    )?;
    artifacts.push(g_diff_path);

    let segments_path = out_dir.join("g_diff_segments.geojson");
    std::fs::write(
        &segments_path,
        serde_json::to_string_pretty(&subsegments_to_geojson(&diff_segments))?,
    )?;
    artifacts.push(segments_path);

    let costed_path = out_dir.join("costed.geojson");
    std::fs::write(
        &costed_path,
        serde_json::to_string_pretty(&costed_graph_to_geojson(&costed))?,
    )?;
    artifacts.push(costed_path);

    let grid = heatmap(&cleaned, config.heatmap_cell);
    let csv_path = out_dir.join("heatmap.csv");
    std::fs::write(&csv_path, heatmap_to_csv(&grid))?;
    artifacts.push(csv_path);
    let pgm_path = out_dir.join("heatmap.pgm");
    write_heatmap_pgm(&pgm_path, &grid)?;
    artifacts.push(pgm_path);

    let manifest = json!({
        "schema_version": SCHEMA_VERSION,
        "config": config,
        "inputs": {
            "pre": { "path": pre_path.display().to_string(), "fnv1a64": fnv1a64_hex(&pre_bytes) },
            "post": { "path": post_path.display().to_string(), "fnv1a64": fnv1a64_hex(&post_bytes) },
            "osm": { "path": osm_path.display().to_string(), "fnv1a64": fnv1a64_hex(&osm_bytes) },
        },
        "registration": { "dx": offset.dx, "dy": offset.dy, "score": offset.score },
        "network": {
            "osm_edges": osm.graph.edge_count(),
            "osm_skipped_features": osm.skipped_features,
            "diff_edges": diff_graph.edge_count(),
            "diff_segments": diff_segments.len(),
            "assigned_segments": report.assignments.len(),
            "unassigned_segments": report.unassigned.len(),
            "flagged_edges": flagged_edges.iter().collect::<Vec<_>>(),
            "removed_edges": costed.removed.iter().map(|e| e.0).collect::<Vec<_>>(),
        },
        "artifacts": artifacts
            .iter()
            .map(|p| p.file_name().unwrap().to_string_lossy().into_owned())
            .collect::<Vec<_>>(),
    });
    let manifest_path = out_dir.join("manifest.json");
    std::fs::write(&manifest_path, serde_json::to_string_pretty(&manifest)?)
        .map_err(CliError::from)?;
    artifacts.push(manifest_path);

    Ok(RunSummary {
        registration: (offset.dx, offset.dy, offset.score),
        diff_graph,
        diff_segments,
        flagged_edges,
        unassigned_segments: report.unassigned.len(),
        costed,
        artifacts,
    })
}
