use crate::error::{Error, Result};

/// Min/max linear rescaling of inputs and target to [-1, 1].
///
/// Constant input dimensions map to 0; values outside the training range
/// are clamped.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalerParams {
    pub input_min: Vec<f64>,
    pub input_max: Vec<f64>,
    pub target_min: f64,
    pub target_max: f64,
}

fn forward(v: f64, lo: f64, hi: f64) -> f64 {
    if hi > lo {
        (2.0 * (v - lo) / (hi - lo) - 1.0).clamp(-1.0, 1.0)
    } else {
        0.0
    }
}

impl ScalerParams {
    pub fn fit(xs: &[Vec<f64>], ys: &[f64]) -> Result<ScalerParams> {
        let first = xs.first().ok_or_else(|| Error::domain("cannot fit a scaler on no data"))?;
        if xs.len() != ys.len() {
            return Err(Error::domain("input and target counts differ"));
        }
        let dim = first.len();
        let mut input_min = vec![f64::INFINITY; dim];
        let mut input_max = vec![f64::NEG_INFINITY; dim];
        for x in xs {
            if x.len() != dim {
                return Err(Error::domain("inconsistent input dimension"));
            }
            for (j, &v) in x.iter().enumerate() {
                if !v.is_finite() {
                    return Err(Error::domain(format!("non-finite input in column {j}")));
                }
                input_min[j] = input_min[j].min(v);
                input_max[j] = input_max[j].max(v);
            }
        }
        if ys.iter().any(|y| !y.is_finite()) {
            return Err(Error::domain("non-finite target"));
        }
        let target_min = ys.iter().copied().fold(f64::INFINITY, f64::min);
        let target_max = ys.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        Ok(ScalerParams { input_min, input_max, target_min, target_max })
    }

    pub fn dim(&self) -> usize {
        self.input_min.len()
    }

    pub fn is_constant(&self, j: usize) -> bool {
        self.input_max[j] <= self.input_min[j]
    }

    /// Indices of dimensions that vary in the training data.
    pub fn active_dims(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&j| !self.is_constant(j)).collect()
    }

    pub fn scale_input(&self, x: &[f64]) -> Vec<f64> {
        x.iter()
            .enumerate()
            .map(|(j, &v)| forward(v, self.input_min[j], self.input_max[j]))
            .collect()
    }

    /// Scaled values of the active dimensions only.
    pub fn scale_active(&self, x: &[f64], active: &[usize]) -> Vec<f64> {
        active.iter().map(|&j| forward(x[j], self.input_min[j], self.input_max[j])).collect()
    }

    /// Number of components outside the training range.
    pub fn out_of_range(&self, x: &[f64]) -> usize {
        x.iter()
            .enumerate()
            .filter(|&(j, &v)| v < self.input_min[j] || v > self.input_max[j])
            .count()
    }

    pub fn scale_target(&self, y: f64) -> f64 {
        forward(y, self.target_min, self.target_max)
    }

    pub fn unscale_target(&self, s: f64) -> f64 {
        if self.target_max > self.target_min {
            self.target_min + (s + 1.0) * 0.5 * (self.target_max - self.target_min)
        } else {
            self.target_min
        }
    }
}
