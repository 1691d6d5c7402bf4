use std::fmt;
use std::ops::Range;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::evaluation::metrics::{mean_and_std, rmse};
use crate::evaluation::split::{group_kfold_split, kfold_split};
use crate::features::matrix::EvaluationMatrix;
use crate::predictor::{train_bagged_with, BagConfig, MeanRegressor};
use crate::rng::{derive_seed, seeded};

#[derive(Debug, Clone, PartialEq)]
pub struct LabeledRow {
    pub values: Vec<f64>,
    pub target: f64,
    pub group: Option<String>,
}

/// Rows of equal length with finite targets.
#[derive(Debug, Clone, PartialEq)]
pub struct LabeledDataset {
    rows: Vec<LabeledRow>,
}

impl LabeledDataset {
    pub fn new(rows: Vec<LabeledRow>) -> Result<LabeledDataset> {
        if let Some(first) = rows.first() {
            let dim = first.values.len();
            for (i, r) in rows.iter().enumerate() {
                if r.values.len() != dim {
                    return Err(Error::domain(format!(
                        "row {i} has {} values, expected {dim}",
                        r.values.len()
                    )));
                }
                if !r.target.is_finite() {
                    return Err(Error::domain(format!("row {i} has a non-finite target")));
                }
            }
        }
        Ok(LabeledDataset { rows })
    }

    /// One target column of a matrix; rows are grouped by player id when
    /// `group_by_player` is set.
    pub fn from_matrix(
        matrix: &EvaluationMatrix,
        target: usize,
        group_by_player: bool,
    ) -> Result<LabeledDataset> {
        if target >= matrix.target_names.len() {
            return Err(Error::domain(format!("matrix has no target column {target}")));
        }
        LabeledDataset::new(
            matrix
                .rows
                .iter()
                .map(|r| LabeledRow {
                    values: r.values.clone(),
                    target: r.targets[target],
                    group: group_by_player.then(|| r.player_id.clone()),
                })
                .collect(),
        )
    }

    pub fn from_xy(xs: Vec<Vec<f64>>, ys: Vec<f64>) -> Result<LabeledDataset> {
        if xs.len() != ys.len() {
            return Err(Error::domain("input and target counts differ"));
        }
        LabeledDataset::new(
            xs.into_iter()
                .zip(ys)
                .map(|(values, target)| LabeledRow { values, target, group: None })
                .collect(),
        )
    }

    pub fn rows(&self) -> &[LabeledRow] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.rows.first().map_or(0, |r| r.values.len())
    }

    pub fn targets(&self) -> Vec<f64> {
        self.rows.iter().map(|r| r.target).collect()
    }

    /// Keeps only the given column ranges, concatenated in order.
    pub fn project(&self, ranges: &[Range<usize>]) -> Result<LabeledDataset> {
        let dim = self.dim();
        if let Some(r) = ranges.iter().find(|r| r.end > dim) {
            return Err(Error::domain(format!("columns {r:?} exceed dimension {dim}")));
        }
        let rows = self
            .rows
            .iter()
            .map(|r| LabeledRow {
                values: ranges.iter().flat_map(|rg| r.values[rg.clone()].iter().copied()).collect(),
                target: r.target,
                group: r.group.clone(),
            })
            .collect();
        Ok(LabeledDataset { rows })
    }

    fn groups(&self) -> Option<Vec<&str>> {
        self.rows.iter().map(|r| r.group.as_deref()).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ModelSpec {
    Mean,
    BaggedNn(BagConfig),
}

impl ModelSpec {
    pub fn bagged() -> ModelSpec {
        ModelSpec::BaggedNn(BagConfig::default())
    }

    pub fn label(&self) -> &'static str {
        match self {
            ModelSpec::Mean => "mean",
            ModelSpec::BaggedNn(_) => "bagged-nn",
        }
    }

    /// Trains on `(xs, ys)` and predicts `test`.
    pub fn fit_predict(
        &self,
        xs: &[Vec<f64>],
        ys: &[f64],
        test: &[Vec<f64>],
        seed: u64,
    ) -> Result<Vec<f64>> {
        match self {
            ModelSpec::Mean => {
                let m = MeanRegressor::fit(ys)?;
                Ok(test.iter().map(|x| m.predict(x)).collect())
            }
            ModelSpec::BaggedNn(cfg) => {
                let m = train_bagged_with(xs, ys, seed, cfg)?;
                test.iter().map(|x| m.predict(x)).collect()
            }
        }
    }
}

impl fmt::Display for ModelSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for ModelSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<ModelSpec> {
        match s.to_ascii_lowercase().as_str() {
            "mean" => Ok(ModelSpec::Mean),
            "bagged-nn" | "bagged" | "nn" => Ok(ModelSpec::bagged()),
            other => Err(Error::domain(format!("unknown model {other:?} (use mean or bagged-nn)"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CvOptions {
    pub folds: usize,
    pub repeats: usize,
    pub seed: u64,
    /// Keep rows with the same group id in one fold.
    pub group_aware: bool,
}

impl Default for CvOptions {
    fn default() -> Self {
        CvOptions { folds: 10, repeats: 5, seed: 0, group_aware: false }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CvReport {
    pub model: String,
    pub features: String,
    pub repeat_rmse: Vec<f64>,
    pub mean: f64,
    /// Sample standard deviation over repeats.
    pub std: f64,
}

impl CvReport {
    pub fn from_repeats(model: &str, features: &str, repeat_rmse: Vec<f64>) -> CvReport {
        let (mean, std) = mean_and_std(&repeat_rmse);
        CvReport { model: model.to_string(), features: features.to_string(), repeat_rmse, mean, std }
    }

    /// Standard error of the mean over repeats.
    pub fn std_error(&self) -> f64 {
        self.std / (self.repeat_rmse.len().max(1) as f64).sqrt()
    }
}

/// Report plus the held-out prediction of every row in every repeat.
#[derive(Debug, Clone, PartialEq)]
pub struct CvOutcome {
    pub report: CvReport,
    /// `predictions[r][i]`: prediction for row `i` in repeat `r`.
    pub predictions: Vec<Vec<f64>>,
    /// `folds[r]`: the partition used in repeat `r`.
    pub folds: Vec<Vec<Vec<usize>>>,
}

pub fn cross_validate(
    data: &LabeledDataset,
    spec: &ModelSpec,
    options: &CvOptions,
    features: &str,
) -> Result<CvReport> {
    cross_validate_detailed(data, spec, options, features).map(|o| o.report)
}

pub fn cross_validate_detailed(
    data: &LabeledDataset,
    spec: &ModelSpec,
    options: &CvOptions,
    features: &str,
) -> Result<CvOutcome> {
    let rows = data.rows();
    let select = |idx: &[usize]| idx.iter().map(|&i| rows[i].values.clone()).collect::<Vec<_>>();
    let groups = if options.group_aware {
        Some(data.groups().ok_or_else(|| Error::domain("group-aware split needs a group on every row"))?)
    } else {
        None
    };
    cross_validate_with(
        &data.targets(),
        groups.as_deref(),
        spec,
        options,
        features,
        |train, test| Ok((select(train), select(test))),
    )
}

/// Cross-validation where the caller builds the feature vectors of each
/// fold (e.g. to recompute a vocabulary from the training rows only).
/// `featurize(train, test)` returns the vectors of those rows, in order.
pub fn cross_validate_with<F>(
    targets: &[f64],
    groups: Option<&[&str]>,
    spec: &ModelSpec,
    options: &CvOptions,
    features: &str,
    featurize: F,
) -> Result<CvOutcome>
where
    F: Fn(&[usize], &[usize]) -> Result<(Vec<Vec<f64>>, Vec<Vec<f64>>)> + Sync,
{
    let n = targets.len();
    if options.repeats == 0 {
        return Err(Error::domain("at least one repeat is required"));
    }
    let mut repeat_rmse = Vec::with_capacity(options.repeats);
    let mut all_predictions = Vec::with_capacity(options.repeats);
    let mut all_folds = Vec::with_capacity(options.repeats);
    for r in 0..options.repeats {
        let mut split_rng = seeded(derive_seed(options.seed, 2 * r as u64));
        let folds = match groups {
            Some(g) => group_kfold_split(g, options.folds, &mut split_rng)?,
            None => kfold_split(n, options.folds, &mut split_rng)?,
        };
        let model_seed = derive_seed(options.seed, 2 * r as u64 + 1);
        let fold_preds: Vec<Vec<f64>> = folds
            .par_iter()
            .enumerate()
            .map(|(f, test)| {
                let mut in_test = vec![false; n];
                test.iter().for_each(|&i| in_test[i] = true);
                let train: Vec<usize> = (0..n).filter(|&i| !in_test[i]).collect();
                let (xs, tx) = featurize(&train, test)?;
                let ys: Vec<f64> = train.iter().map(|&i| targets[i]).collect();
                spec.fit_predict(&xs, &ys, &tx, derive_seed(model_seed, f as u64))
            })
            .collect::<Vec<Result<_>>>()
            .into_iter()
            .enumerate()
            .map(|(f, res)| {
                res.map_err(|e| Error::domain(format!("repeat {}, fold {}: {e}", r + 1, f + 1)))
            })
            .collect::<Result<_>>()?;

        let mut preds = vec![f64::NAN; n];
        for (test, p) in folds.iter().zip(&fold_preds) {
            for (&i, &v) in test.iter().zip(p) {
                preds[i] = v;
            }
        }
        repeat_rmse.push(rmse(&preds, targets)?);
        all_predictions.push(preds);
        all_folds.push(folds);
    }
    Ok(CvOutcome {
        report: CvReport::from_repeats(spec.label(), features, repeat_rmse),
        predictions: all_predictions,
        folds: all_folds,
    })
}
