//! Bagged feedforward-network regressor, mean-regression baseline, input
//! and target scaling, and model persistence.

pub mod bagged;
pub mod network;
pub mod persist;
pub mod scaler;

pub use bagged::{
    train_bagged, train_bagged_with, BagConfig, BaggedModel, MeanRegressor, Prediction, BAG_SIZE,
};
pub use network::{rprop, train_network, Network, RpropConfig, TrainStats, HIDDEN_UNITS};
pub use persist::ModelBundle;
pub use scaler::ScalerParams;
