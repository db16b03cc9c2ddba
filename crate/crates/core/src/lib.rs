//! Road network change detection and damage-weighted routing.
//!
//! Given a pre-event and a post-event road mask (probability rasters from any
//! segmentation source) plus a prior vector road network, this crate computes
//! the missing-road difference graph, fuses it into a cost-weighted routable
//! network, and evaluates the result with sub-segment and connectivity
//! metrics.
//!
//! The processing chain:
//!
//! 1. [`raster`]: threshold, registration, morphology, mask differencing,
//!    heatmap aggregation, vector-to-raster label generation.
//! 2. [`skeleton`]: thinning of a binary mask to a one-pixel skeleton and
//!    tracing it into a spatial [`graph::RoadGraph`].
//! 3. [`compare`]: polyline simplification, fixed-length sub-segment slicing,
//!    endpoint-distance correspondence, intersection/difference and
//!    precision/recall metrics.
//! 4. [`fusion`]: prior-network ingest, damage assignment and the
//!    `cost = alpha * s / d^2` edge cost update.
//! 5. [`route`]: shortest paths over costed graphs and four-way connectivity
//!    classification.
//!
//! All world-unit math is generic over the [`Scalar`] floating point type;
//! `*64` aliases at the crate root pin the common `f64` instantiations.

pub mod compare;
pub mod error;
pub mod fusion;
pub mod geometry;
pub mod graph;
pub mod io;
pub mod raster;
pub mod route;
pub mod scalar;
pub mod skeleton;

pub use error::Error;
pub use scalar::Scalar;

/// Result alias used across the crate.
pub type Result<T> = std::result::Result<T, Error>;

pub type Point64 = geometry::Point2<f64>;
pub type GeoTransform64 = raster::GeoTransform<f64>;
pub type ProbabilityMask64 = raster::ProbabilityMask<f64>;
pub type BinaryMask64 = raster::BinaryMask<f64>;
pub type Skeleton64 = skeleton::Skeleton<f64>;
pub type RoadGraph64 = graph::RoadGraph<f64>;
pub type WeightedGraph64 = graph::WeightedGraph<f64>;
pub type SubSegmentSet64 = compare::SubSegmentSet<f64>;
pub type CostedGraph64 = fusion::CostedGraph<f64>;
pub type Alpha64 = fusion::Alpha<f64>;
