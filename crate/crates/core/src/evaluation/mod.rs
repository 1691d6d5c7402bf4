//! Repeated k-fold cross-validation, RMSE reporting and feature ablation.

pub mod ablation;
pub mod cv;
pub mod metrics;
pub mod report;
pub mod split;

pub use ablation::{feature_ablation, AblationRow, AblationTable, ALL_COMBINED, MEAN_BASELINE};
pub use cv::{
    cross_validate, cross_validate_detailed, cross_validate_with, CvOptions, CvOutcome, CvReport,
    LabeledDataset, LabeledRow, ModelSpec,
};
pub use metrics::{mean_and_std, rmse};
pub use report::{ablation_delimited, ablation_text, report_delimited, report_text};
pub use split::{group_kfold_split, kfold_split};
