//! Report emission: JSON documents, heatmap CSV and scaled PGM.

use std::path::Path;

use serde::Serialize;
use serde_json::{json, Value};

use crate::io::{write_pgm, SCHEMA_VERSION};
use crate::raster::HeatmapGrid;
use crate::Result;

/// Serializes a report with an injected `schema_version` field and writes
/// it pretty-printed.
pub fn write_json_report<T: Serialize>(path: &Path, report: &T) -> Result<()> {
    let mut value = serde_json::to_value(report)?;
    if let Value::Object(map) = &mut value {
        map.insert("schema_version".into(), json!(SCHEMA_VERSION));
    }
    std::fs::write(path, serde_json::to_string_pretty(&value)?)?;
    Ok(())
}

/// `row,col,sum` lines, row-major.
pub fn heatmap_to_csv(grid: &HeatmapGrid) -> String {
    let mut out = String::from("row,col,sum\n");
    for row in 0..grid.rows {
        for col in 0..grid.cols {
            out.push_str(&format!("{row},{col},{}\n", grid.sum(row, col)));
        }
    }
    out
}

/// One byte per cell, scaled so the hottest cell is 255; all zeros when the
/// grid is empty.
pub fn heatmap_to_pgm_bytes(grid: &HeatmapGrid) -> Vec<u8> {
    let max = grid.max();
    grid.sums
        .iter()
        .map(|s| {
            if max == 0 {
                0
            } else {
                ((u64::from(*s) * 255 + u64::from(max) / 2) / u64::from(max)) as u8
            }
        })
        .collect()
}

/// Writes the scaled heatmap as a PGM image of `cols x rows`.
pub fn write_heatmap_pgm(path: &Path, grid: &HeatmapGrid) -> Result<()> {
    write_pgm(path, grid.cols, grid.rows, &heatmap_to_pgm_bytes(grid))
}
