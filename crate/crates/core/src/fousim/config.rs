use serde::Serialize;

use crate::error::{FbmhError, Result};
use crate::hilbert::hurst::HurstParam;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McConfig {
    pub seed: u64,
    pub n_steps: usize,
    pub n_paths: usize,
    pub horizon: f64,
    pub hurst: HurstParam<f64>,
    pub theta: f64,
}

impl McConfig {
    pub fn new(hurst: HurstParam<f64>, horizon: f64, n_steps: usize, n_paths: usize, seed: u64) -> Result<Self> {
        let cfg = McConfig { seed, n_steps, n_paths, horizon, hurst, theta: 1.0 };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn with_theta(mut self, theta: f64) -> Result<Self> {
        self.theta = theta;
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        if !self.n_steps.is_power_of_two() || self.n_steps < 2 {
            return Err(FbmhError::InvalidConfig(format!("n_steps must be a power of two ≥ 2, got {}", self.n_steps)));
        }
        if self.n_paths < 2 {
            return Err(FbmhError::InvalidConfig(format!("n_paths must be at least 2, got {}", self.n_paths)));
        }
        if !(self.horizon > 0.0 && self.horizon.is_finite()) {
            return Err(FbmhError::InvalidConfig(format!("horizon must be positive, got {}", self.horizon)));
        }
        if !(self.theta > 0.0 && self.theta.is_finite()) {
            return Err(FbmhError::InvalidConfig(format!("theta must be positive, got {}", self.theta)));
        }
        Ok(())
    }

    pub fn dt(&self) -> f64 {
        self.horizon / self.n_steps as f64
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct McEstimate {
    pub mean: f64,
    pub std_error: f64,
    pub n_paths: usize,
}

impl McEstimate {
    /// Sample mean and `sd/√n` of `samples`, summed in index order.
    pub fn from_samples(samples: &[f64]) -> Self {
        let n = samples.len();
        let nf = n as f64;
        let mean = samples.iter().sum::<f64>() / nf;
        let var = samples.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (nf - 1.0);
        McEstimate { mean, std_error: (var / nf).sqrt(), n_paths: n }
    }
}
