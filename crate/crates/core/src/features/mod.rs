//! Aggregation of annotated games into per-player evaluation vectors.

pub mod config;
pub mod families;
pub mod matrix;
pub mod vector;
pub mod vocab;

pub use config::{FeatureConfig, Interval, Intervals, Preset};
pub use families::{
    border_distance_feature, captured_stones_feature, partition_sequences, pattern_feature,
    sente_gote_feature, winloss_feature, AnnotatedSet, LocalSequence,
};
pub use matrix::{EvaluationMatrix, MatrixRow};
pub use vector::{evaluate_set, EvaluationVector, Segment, SegmentLayout, SEGMENT_NAMES};
pub use vocab::{build_vocabulary, PatternCounter, PatternVocabulary};
