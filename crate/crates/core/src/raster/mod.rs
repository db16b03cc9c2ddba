//! Georeferenced rasters and the binary mask operations of the pipeline.

mod diff;
mod geo;
mod heatmap;
mod mask;
mod morphology;
mod rasterize;
mod register;

pub use diff::{clean_diff, diff_masks};
pub use geo::GeoTransform;
pub use heatmap::{heatmap, HeatmapGrid};
pub use mask::{BinaryMask, ProbabilityMask};
pub use morphology::{dilate, erode, open};
pub use rasterize::rasterize_graph;
pub use register::{register, PixelOffset};
