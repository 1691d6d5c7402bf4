use rand::Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::predictor::network::{rprop, Network, RpropConfig};
use crate::predictor::scaler::ScalerParams;
use crate::rng::{derive_seed, seeded};

pub const BAG_SIZE: usize = 20;

/// Bag of networks sharing one scaler. Networks only see the input
/// dimensions that varied in the training data (`active`); the others are
/// constant and scale to zero.
#[derive(Debug, Clone, PartialEq)]
pub struct BaggedModel {
    pub scaler: ScalerParams,
    pub active: Vec<usize>,
    pub members: Vec<Network>,
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BagConfig {
    pub members: usize,
    pub rprop: RpropConfig,
}

impl Default for BagConfig {
    fn default() -> Self {
        BagConfig { members: BAG_SIZE, rprop: RpropConfig::default() }
    }
}

/// Per-prediction details.
#[derive(Debug, Clone, PartialEq)]
pub struct Prediction {
    pub value: f64,
    /// Member outputs in scaled target space.
    pub member_outputs: Vec<f64>,
    /// Input components that were clamped into the training range.
    pub clamped: usize,
}

pub fn train_bagged(xs: &[Vec<f64>], ys: &[f64], seed: u64) -> Result<BaggedModel> {
    train_bagged_with(xs, ys, seed, &BagConfig::default())
}

pub fn train_bagged_with(
    xs: &[Vec<f64>],
    ys: &[f64],
    seed: u64,
    config: &BagConfig,
) -> Result<BaggedModel> {
    let scaler = ScalerParams::fit(xs, ys)?;
    let active = scaler.active_dims();
    let sx: Vec<Vec<f64>> = xs.iter().map(|x| scaler.scale_active(x, &active)).collect();
    let sy: Vec<f64> = ys.iter().map(|&y| scaler.scale_target(y)).collect();
    let n = xs.len();

    let members = (0..config.members)
        .into_par_iter()
        .map(|m| {
            let mut rng = seeded(derive_seed(seed, m as u64));
            let picks: Vec<usize> = (0..n).map(|_| rng.gen_range(0..n)).collect();
            let bx: Vec<Vec<f64>> = picks.iter().map(|&i| sx[i].clone()).collect();
            let by: Vec<f64> = picks.iter().map(|&i| sy[i]).collect();
            let mut net = Network::random(active.len(), &mut rng);
            rprop(&mut net, &bx, &by, &config.rprop);
            net
        })
        .collect();
    Ok(BaggedModel { scaler, active, members, seed })
}

impl BaggedModel {
    pub fn dim(&self) -> usize {
        self.scaler.dim()
    }

    pub fn predict_detailed(&self, x: &[f64]) -> Result<Prediction> {
        if x.len() != self.dim() {
            return Err(Error::domain(format!(
                "input has {} components, model expects {}",
                x.len(),
                self.dim()
            )));
        }
        let sx = self.scaler.scale_active(x, &self.active);
        let member_outputs: Vec<f64> = self.members.iter().map(|m| m.predict(&sx)).collect();
        let mean = member_outputs.iter().sum::<f64>() / member_outputs.len() as f64;
        Ok(Prediction {
            value: self.scaler.unscale_target(mean),
            member_outputs,
            clamped: self.scaler.out_of_range(x),
        })
    }

    pub fn predict(&self, x: &[f64]) -> Result<f64> {
        self.predict_detailed(x).map(|p| p.value)
    }
}

/// Constant predictor returning the training mean.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeanRegressor {
    pub mean: f64,
}

impl MeanRegressor {
    pub fn fit(ys: &[f64]) -> Result<MeanRegressor> {
        if ys.is_empty() {
            return Err(Error::domain("cannot fit mean regression on no data"));
        }
        Ok(MeanRegressor { mean: ys.iter().sum::<f64>() / ys.len() as f64 })
    }

    pub fn predict(&self, _x: &[f64]) -> f64 {
        self.mean
    }
}
