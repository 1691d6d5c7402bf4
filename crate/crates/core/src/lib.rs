//! Replay Go game records, extract per-move annotations and per-player
//! feature vectors, and predict player attributes (strength, style) with a
//! bagged neural network under repeated cross-validation.

pub mod board;
pub mod error;
pub mod evaluation;
pub mod features;
pub mod ingest;
pub mod pipeline;
pub mod predictor;
pub mod rng;
pub mod synth;
pub mod types;

pub use error::{Error, Result};
pub use types::{gridcular_distance, Color, Move, Point};
