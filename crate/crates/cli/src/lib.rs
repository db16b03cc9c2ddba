//! Pipeline orchestration for the road change detection tool.
//!
//! The binary in `main.rs` is a thin clap wrapper over this library so the
//! full pipeline stays testable in-process.

pub mod commands;
pub mod config;
pub mod error;
pub mod pipeline;
pub mod scene;

pub use config::{ConfigOverrides, PipelineConfig};
pub use error::{CliError, ExitCode};
pub use pipeline::{run_pipeline, RunSummary};
pub use scene::{generate_scene, SceneSpec, SyntheticScene};
