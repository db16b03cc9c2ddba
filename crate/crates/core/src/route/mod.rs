//! Shortest-path routing and connectivity evaluation.

mod connectivity;
mod dijkstra;
mod sample;

pub use connectivity::{connectivity_metrics, ConnectivityParams, ConnectivityReport};
pub use dijkstra::{shortest_path, PathResult, PathStatus};
pub use sample::sample_pairs;
