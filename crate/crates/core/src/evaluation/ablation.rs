use crate::error::{Error, Result};
use crate::evaluation::cv::{cross_validate, CvOptions, CvReport, LabeledDataset, ModelSpec};
use crate::features::vector::SegmentLayout;

pub const ALL_COMBINED: &str = "All features combined";
pub const MEAN_BASELINE: &str = "Mean regression";

#[derive(Debug, Clone, PartialEq)]
pub struct AblationRow {
    pub report: CvReport,
    /// Mean-regression RMSE divided by this row's RMSE.
    pub mean_cmp: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AblationTable {
    pub target: String,
    pub baseline: CvReport,
    /// One row per requested segment, then the combined row.
    pub rows: Vec<AblationRow>,
}

impl AblationTable {
    pub fn combined(&self) -> &AblationRow {
        self.rows.last().expect("ablation table always has the combined row")
    }

    pub fn row(&self, features: &str) -> Option<&AblationRow> {
        self.rows.iter().find(|r| r.report.features == features)
    }
}

/// Cross-validates `spec` on each named segment alone and on the full
/// vector, against a mean-regression baseline under the same splits.
pub fn feature_ablation(
    data: &LabeledDataset,
    spec: &ModelSpec,
    layout: &SegmentLayout,
    segments: &[&str],
    options: &CvOptions,
    target: &str,
) -> Result<AblationTable> {
    if layout.total_len() != data.dim() {
        return Err(Error::domain(format!(
            "layout covers {} columns, data has {}",
            layout.total_len(),
            data.dim()
        )));
    }
    let ranges = segments
        .iter()
        .map(|s| layout.resolve(s).ok_or_else(|| Error::domain(format!("unknown segment {s:?}"))))
        .collect::<Result<Vec<_>>>()?;

    let baseline = cross_validate(data, &ModelSpec::Mean, options, MEAN_BASELINE)?;
    let row = |report: CvReport| AblationRow { mean_cmp: baseline.mean / report.mean, report };
    let mut rows = Vec::with_capacity(segments.len() + 1);
    for (name, range) in segments.iter().zip(ranges) {
        log::info!("cross-validating {} on segment {name}", spec.label());
        rows.push(row(cross_validate(&data.project(&[range])?, spec, options, name)?));
    }
    log::info!("cross-validating {} on all features", spec.label());
    rows.push(row(cross_validate(data, spec, options, ALL_COMBINED)?));
    Ok(AblationTable { target: target.to_string(), baseline, rows })
}
