use rayon::prelude::*;

use crate::error::Result;
use crate::fousim::config::{McConfig, McEstimate};
use crate::fousim::fbm::{path_rng, FbmGenerator};
use crate::fousim::fou::fou_path;
use crate::hilbert::ou::ou_variance;
use crate::numerics::quadrature::QuadratureSpec;

/// `E[η_{t_k}²]` on the simulation grid, for mean-reversion rate `θ`.
///
/// Uses the scaling `η^θ_t = θ^{-H} η^1_{θt}` in law.
pub fn grid_variance(cfg: &McConfig, spec: &QuadratureSpec<f64>) -> Result<Vec<f64>> {
    cfg.validate()?;
    let dt = cfg.dt();
    let scale = cfg.theta.powf(-2.0 * cfg.hurst.h());
    (0..=cfg.n_steps)
        .into_par_iter()
        .map(|k| Ok(scale * ou_variance(cfg.theta * k as f64 * dt, &cfg.hurst, spec)?))
        .collect()
}

/// Trapezoid rule on a uniform grid.
fn trapezoid(y: &[f64], dt: f64) -> f64 {
    let n = y.len();
    if n < 2 {
        return 0.0;
    }
    dt * (y[1..n - 1].iter().sum::<f64>() + 0.5 * (y[0] + y[n - 1]))
}

/// `W_T = T^{-1/2} ∫_0^T (η_t² - E[η_t²]) dt` for one simulated path.
pub fn wt_sample(gen: &FbmGenerator, cfg: &McConfig, variance: &[f64], path: u64) -> f64 {
    let dt = cfg.dt();
    let b = gen.path(&mut path_rng(cfg.seed, path));
    let eta = fou_path(&b, dt, cfg.theta);
    let centred: Vec<f64> = eta.iter().zip(variance).map(|(e, v)| e * e - v).collect();
    trapezoid(&centred, dt) / cfg.horizon.sqrt()
}

/// Monte Carlo estimate of `E[W_T²]`.
///
/// Paths run in parallel but are reduced in index order, so the result
/// depends only on the configuration.
pub fn mc_wt_variance(cfg: &McConfig) -> Result<McEstimate> {
    let gen = FbmGenerator::new(cfg)?;
    let variance = grid_variance(cfg, &QuadratureSpec::default_1d())?;
    let samples: Vec<f64> = (0..cfg.n_paths as u64)
        .into_par_iter()
        .map(|p| {
            let w = wt_sample(&gen, cfg, &variance, p);
            w * w
        })
        .collect();
    Ok(McEstimate::from_samples(&samples))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trapezoid_linear() {
        let y: Vec<f64> = (0..=10).map(|k| k as f64 * 0.1).collect();
        assert!((trapezoid(&y, 0.1) - 0.5).abs() < 1e-15);
    }
}
