//! One-hidden-layer feedforward network with tanh units, trained full-batch
//! with RPROP (Riedmiller & Braun, with weight backtracking).

use rand::Rng;

use crate::error::{Error, Result};
use crate::rng::seeded;

pub const HIDDEN_UNITS: usize = 20;

/// Weights of a `inputs -> 20 -> 1` network. Each row of `w1` holds one
/// hidden unit's input weights followed by its bias; `w2` holds the output
/// weights followed by the output bias.
#[derive(Debug, Clone, PartialEq)]
pub struct Network {
    inputs: usize,
    pub w1: Vec<f64>,
    pub w2: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RpropConfig {
    pub eta_plus: f64,
    pub eta_minus: f64,
    pub delta_init: f64,
    pub delta_min: f64,
    pub delta_max: f64,
    pub max_epochs: usize,
    pub target_mse: f64,
}

impl Default for RpropConfig {
    fn default() -> Self {
        RpropConfig {
            eta_plus: 1.2,
            eta_minus: 0.5,
            delta_init: 0.1,
            delta_min: 1e-6,
            delta_max: 50.0,
            max_epochs: 100,
            target_mse: 0.001,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrainStats {
    pub epochs: usize,
    /// Last MSE evaluated (before the final update when the epoch budget ran out).
    pub mse: f64,
}

impl Network {
    pub fn zeros(inputs: usize) -> Network {
        Network {
            inputs,
            w1: vec![0.0; HIDDEN_UNITS * (inputs + 1)],
            w2: vec![0.0; HIDDEN_UNITS + 1],
        }
    }

    /// Weights uniform in [-0.5, 0.5].
    pub fn random(inputs: usize, rng: &mut impl Rng) -> Network {
        let mut n = Network::zeros(inputs);
        for w in n.w1.iter_mut().chain(n.w2.iter_mut()) {
            *w = rng.gen_range(-0.5..=0.5);
        }
        n
    }

    pub fn from_weights(inputs: usize, w1: Vec<f64>, w2: Vec<f64>) -> Result<Network> {
        if w1.len() != HIDDEN_UNITS * (inputs + 1) || w2.len() != HIDDEN_UNITS + 1 {
            return Err(Error::domain("weight arrays do not match the network shape"));
        }
        if w1.iter().chain(&w2).any(|w| !w.is_finite()) {
            return Err(Error::domain("non-finite weight"));
        }
        Ok(Network { inputs, w1, w2 })
    }

    pub fn inputs(&self) -> usize {
        self.inputs
    }

    pub fn param_count(&self) -> usize {
        self.w1.len() + self.w2.len()
    }

    fn hidden(&self, x: &[f64], h: &mut [f64; HIDDEN_UNITS]) {
        let stride = self.inputs + 1;
        for (j, hj) in h.iter_mut().enumerate() {
            let row = &self.w1[j * stride..(j + 1) * stride];
            *hj = (dot(&row[..self.inputs], x) + row[self.inputs]).tanh();
        }
    }

    fn output(&self, h: &[f64; HIDDEN_UNITS]) -> f64 {
        let z: f64 = self.w2[..HIDDEN_UNITS].iter().zip(h).map(|(w, v)| w * v).sum::<f64>()
            + self.w2[HIDDEN_UNITS];
        z.tanh()
    }

    pub fn predict(&self, x: &[f64]) -> f64 {
        debug_assert_eq!(x.len(), self.inputs);
        let mut h = [0.0; HIDDEN_UNITS];
        self.hidden(x, &mut h);
        self.output(&h)
    }

    /// Mean squared error over the batch and its gradient, laid out as
    /// `w1` followed by `w2`.
    pub fn mse_and_gradient(&self, xs: &[Vec<f64>], ys: &[f64]) -> (f64, Vec<f64>) {
        let n = xs.len() as f64;
        let stride = self.inputs + 1;
        let mut grad = vec![0.0; self.param_count()];
        let (g1, g2) = grad.split_at_mut(self.w1.len());
        let mut h = [0.0; HIDDEN_UNITS];
        let mut sse = 0.0;
        for (x, &y) in xs.iter().zip(ys) {
            self.hidden(x, &mut h);
            let o = self.output(&h);
            let err = o - y;
            sse += err * err;
            let d_out = 2.0 * err / n * (1.0 - o * o);
            for j in 0..HIDDEN_UNITS {
                g2[j] += d_out * h[j];
                let d_h = d_out * self.w2[j] * (1.0 - h[j] * h[j]);
                let row = &mut g1[j * stride..(j + 1) * stride];
                for (g, v) in row[..self.inputs].iter_mut().zip(x) {
                    *g += d_h * v;
                }
                row[self.inputs] += d_h;
            }
            g2[HIDDEN_UNITS] += d_out;
        }
        (sse / n, grad)
    }

    pub fn mse(&self, xs: &[Vec<f64>], ys: &[f64]) -> f64 {
        xs.iter().zip(ys).map(|(x, y)| (self.predict(x) - y).powi(2)).sum::<f64>() / xs.len() as f64
    }

    fn param_mut(&mut self, k: usize) -> &mut f64 {
        if k < self.w1.len() {
            &mut self.w1[k]
        } else {
            &mut self.w2[k - self.w1.len()]
        }
    }

    pub fn params(&self) -> Vec<f64> {
        self.w1.iter().chain(&self.w2).copied().collect()
    }

    pub fn set_params(&mut self, p: &[f64]) {
        assert_eq!(p.len(), self.param_count());
        let (a, b) = p.split_at(self.w1.len());
        self.w1.copy_from_slice(a);
        self.w2.copy_from_slice(b);
    }
}

/// Dot product with independent partial sums so the compiler can vectorize.
fn dot(a: &[f64], b: &[f64]) -> f64 {
    let mut acc = [0.0; 8];
    let (ca, cb) = (a.chunks_exact(8), b.chunks_exact(8));
    let tail: f64 = ca.remainder().iter().zip(cb.remainder()).map(|(x, y)| x * y).sum();
    for (u, v) in ca.zip(cb) {
        for k in 0..8 {
            acc[k] += u[k] * v[k];
        }
    }
    acc.iter().sum::<f64>() + tail
}

/// Trains from weights drawn with `seed`.
pub fn train_network(
    xs: &[Vec<f64>],
    ys: &[f64],
    seed: u64,
    config: &RpropConfig,
) -> Result<(Network, TrainStats)> {
    let inputs = xs.first().map(Vec::len).ok_or_else(|| Error::domain("empty training set"))?;
    if xs.len() != ys.len() {
        return Err(Error::domain("input and target counts differ"));
    }
    for x in xs {
        if x.len() != inputs {
            return Err(Error::domain("inconsistent input dimension"));
        }
        if x.iter().any(|v| !v.is_finite()) {
            return Err(Error::domain("non-finite network input"));
        }
    }
    if ys.iter().any(|v| !v.is_finite()) {
        return Err(Error::domain("non-finite network target"));
    }
    let mut net = Network::random(inputs, &mut seeded(seed));
    let stats = rprop(&mut net, xs, ys, config);
    Ok((net, stats))
}

pub fn rprop(net: &mut Network, xs: &[Vec<f64>], ys: &[f64], cfg: &RpropConfig) -> TrainStats {
    let p = net.param_count();
    let mut delta = vec![cfg.delta_init; p];
    let mut prev_grad = vec![0.0; p];
    let mut prev_step = vec![0.0; p];
    let mut mse = f64::INFINITY;
    let mut epochs = 0;
    while epochs < cfg.max_epochs {
        let (e, grad) = net.mse_and_gradient(xs, ys);
        mse = e;
        if mse < cfg.target_mse {
            break;
        }
        epochs += 1;
        for k in 0..p {
            let g = grad[k];
            let s = prev_grad[k] * g;
            if s > 0.0 {
                delta[k] = (delta[k] * cfg.eta_plus).min(cfg.delta_max);
                let step = -g.signum() * delta[k];
                *net.param_mut(k) += step;
                prev_step[k] = step;
                prev_grad[k] = g;
            } else if s < 0.0 {
                delta[k] = (delta[k] * cfg.eta_minus).max(cfg.delta_min);
                *net.param_mut(k) -= prev_step[k];
                prev_step[k] = 0.0;
                prev_grad[k] = 0.0;
            } else {
                let step = if g == 0.0 { 0.0 } else { -g.signum() * delta[k] };
                *net.param_mut(k) += step;
                prev_step[k] = step;
                prev_grad[k] = g;
            }
        }
    }
    TrainStats { epochs, mse }
}
