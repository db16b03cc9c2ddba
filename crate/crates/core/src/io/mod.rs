//! File formats: PGM/PNG rasters, geo sidecars, GeoJSON graphs, reports.

mod geojson;
mod hash;
mod mask_io;
mod pgm;
mod pngio;
mod reports;
mod sidecar;

pub use geojson::{
    costed_graph_to_geojson, road_graph_from_geojson, road_graph_to_geojson,
    subsegments_to_geojson, weighted_graph_from_costed_geojson,
};
pub use hash::fnv1a64_hex;
pub use mask_io::{load_probability_mask, save_binary_mask, save_probability_mask};
pub use pgm::{read_pgm, write_pgm};
pub use pngio::{read_png_gray8, write_png_gray8};
pub use reports::{heatmap_to_csv, heatmap_to_pgm_bytes, write_heatmap_pgm, write_json_report};
pub use sidecar::{read_geo_sidecar, sidecar_path, write_geo_sidecar};

/// Version stamp carried by every JSON document this crate writes.
pub const SCHEMA_VERSION: u32 = 1;
