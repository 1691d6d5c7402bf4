//! Plain-text and delimited renderings of cross-validation results.

use std::fmt::Write as _;

use crate::evaluation::ablation::{AblationTable, MEAN_BASELINE};
use crate::evaluation::cv::CvReport;

struct Line<'a> {
    label: &'a str,
    report: &'a CvReport,
    cmp: Option<f64>,
}

fn lines(table: &AblationTable) -> Vec<Line<'_>> {
    let mut v = vec![Line { label: MEAN_BASELINE, report: &table.baseline, cmp: Some(1.0) }];
    v.extend(table.rows.iter().map(|r| Line {
        label: &r.report.features,
        report: &r.report,
        cmp: Some(r.mean_cmp),
    }));
    v
}

fn render(title: &str, lines: &[Line<'_>]) -> String {
    let width = lines.iter().map(|l| l.label.len()).max().unwrap_or(0).max("Feature".len());
    let mut s = String::new();
    let _ = writeln!(s, "{title}");
    let _ = writeln!(s, "{:<width$}  {:>17}  {:>8}", "Feature", "RMSE", "Mean cmp");
    for l in lines {
        let rmse = format!("{:.3} ± {:.3}", l.report.mean, l.report.std);
        let cmp = l.cmp.map_or_else(|| "-".to_string(), |c| format!("{c:.3}"));
        let _ = writeln!(s, "{:<width$}  {:>17}  {:>8}", l.label, rmse, cmp);
    }
    s
}

/// Aligned table: feature, RMSE ± standard deviation over repeats, Mean cmp.
pub fn ablation_text(table: &AblationTable) -> String {
    let model = &table.combined().report.model;
    render(&format!("target: {}   model: {model}", table.target), &lines(table))
}

fn delimited(target: &str, lines: &[Line<'_>], sep: char) -> String {
    let repeats = lines.iter().map(|l| l.report.repeat_rmse.len()).max().unwrap_or(0);
    let mut s = String::new();
    let mut header = vec!["target", "feature", "model", "rmse_mean", "rmse_std", "mean_cmp"]
        .into_iter()
        .map(String::from)
        .collect::<Vec<_>>();
    header.extend((1..=repeats).map(|r| format!("rmse_repeat{r}")));
    let _ = writeln!(s, "{}", header.join(&sep.to_string()));
    for l in lines {
        let mut cells = vec![
            target.to_string(),
            l.label.to_string(),
            l.report.model.clone(),
            l.report.mean.to_string(),
            l.report.std.to_string(),
            l.cmp.map_or_else(String::new, |c| c.to_string()),
        ];
        cells.extend(l.report.repeat_rmse.iter().map(f64::to_string));
        let _ = writeln!(s, "{}", cells.join(&sep.to_string()));
    }
    s
}

/// Machine-readable version of [`ablation_text`], one line per row.
pub fn ablation_delimited(table: &AblationTable, sep: char) -> String {
    delimited(&table.target, &lines(table), sep)
}

pub fn report_text(target: &str, report: &CvReport) -> String {
    render(
        &format!("target: {target}   model: {}", report.model),
        &[Line { label: &report.features, report, cmp: None }],
    )
}

pub fn report_delimited(target: &str, report: &CvReport, sep: char) -> String {
    delimited(target, &[Line { label: &report.features, report, cmp: None }], sep)
}
