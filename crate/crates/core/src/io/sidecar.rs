//! Geo sidecar files: `<stem>.geo.json` next to each raster.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::io::SCHEMA_VERSION;
use crate::raster::GeoTransform;
use crate::scalar::Scalar;
use crate::Result;

#[derive(Debug, Serialize, Deserialize)]
struct SidecarRecord {
    #[serde(default)]
    schema_version: u32,
    origin_x: f64,
    origin_y: f64,
    pixel_size_x: f64,
    pixel_size_y: f64,
}

/// Sidecar path for a raster: `pre.pgm` pairs with `pre.geo.json`.
pub fn sidecar_path(raster: &Path) -> PathBuf {
    raster.with_extension("geo.json")
}

pub fn write_geo_sidecar<S: Scalar>(raster: &Path, geo: &GeoTransform<S>) -> Result<()> {
    let record = SidecarRecord {
        schema_version: SCHEMA_VERSION,
        origin_x: geo.origin_x.widen(),
        origin_y: geo.origin_y.widen(),
        pixel_size_x: geo.pixel_size_x.widen(),
        pixel_size_y: geo.pixel_size_y.widen(),
    };
    let text = serde_json::to_string_pretty(&record)?;
    std::fs::write(sidecar_path(raster), text)?;
    Ok(())
}

/// Reads the sidecar for a raster; `None` when the file does not exist
/// (callers fall back to a unit transform).
pub fn read_geo_sidecar<S: Scalar>(raster: &Path) -> Result<Option<GeoTransform<S>>> {
    let path = sidecar_path(raster);
    if !path.exists() {
        return Ok(None);
    }
    let text = std::fs::read_to_string(&path)?;
    let record: SidecarRecord = serde_json::from_str(&text)?;
    Ok(Some(GeoTransform::new(
        S::of(record.origin_x),
        S::of(record.origin_y),
        S::of(record.pixel_size_x),
        S::of(record.pixel_size_y),
    )))
}
