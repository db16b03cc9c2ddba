//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Two rasters that must share a shape do not.
    #[error("raster dimensions differ: {0}x{1} vs {2}x{3}")]
    DimensionMismatch(usize, usize, usize, usize),

    /// Correlation is undefined because a mask has no set pixels.
    #[error("registration has no signal: a mask contains no set pixels")]
    NoSignal,

    /// Two sub-segment sets were sliced with different lengths.
    #[error("slice lengths differ: {0} vs {1}")]
    SliceLengthMismatch(f64, f64),

    /// Input is not a structurally valid GeoJSON document.
    #[error("malformed GeoJSON document: {0}")]
    MalformedDocument(String),

    /// A road network input contained no usable line features.
    #[error("no usable road features in input network")]
    EmptyNetwork,

    /// A node id that does not exist in the graph.
    #[error("unknown node id {0}")]
    UnknownNode(usize),

    /// Pair sampling could not satisfy its constraints.
    #[error("pair sampling infeasible: {0}")]
    Infeasible(String),

    /// A document parsed but does not match the expected schema.
    #[error("schema mismatch: {0}")]
    SchemaMismatch(String),

    /// A raster or report file failed to parse.
    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl From<serde_json::Error> for Error {
    fn from(err: serde_json::Error) -> Self {
        Error::Parse(err.to_string())
    }
}
