//! Exact sampling of fractional Brownian motion on a uniform grid.

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rustfft::num_complex::Complex;
use rustfft::{Fft, FftPlanner};
use std::sync::Arc;

use crate::error::{FbmhError, Result};
use crate::fousim::config::McConfig;
use crate::hilbert::hurst::HurstParam;

/// Autocovariance of unit-step fractional Gaussian noise at lag `k`.
pub fn fgn_autocov(hurst: &HurstParam<f64>, k: usize) -> f64 {
    let two_h = 2.0 * hurst.h();
    let k = k as f64;
    let p = |x: f64| if x == 0.0 { 0.0 } else { x.abs().powf(two_h) };
    0.5 * (p(k + 1.0) + p(k - 1.0) - 2.0 * p(k))
}

/// Per-path random stream: seed selects the key, path index the stream.
pub fn path_rng(seed: u64, path: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(path);
    rng
}

enum Method {
    Circulant { sqrt_eig: Vec<f64>, fft: Arc<dyn Fft<f64>> },
    Dense { chol: DMatrix<f64> },
}

/// Reusable sampler for fGn increments of one configuration.
pub struct FbmGenerator {
    n: usize,
    scale: f64,
    method: Method,
}

impl FbmGenerator {
    pub fn new(cfg: &McConfig) -> Result<Self> {
        cfg.validate()?;
        match Self::circulant(cfg) {
            Some(g) => Ok(g),
            None => Self::dense(cfg),
        }
    }

    fn scale(cfg: &McConfig) -> f64 {
        cfg.dt().powf(cfg.hurst.h())
    }

    /// Davies–Harte embedding; `None` when an eigenvalue is negative.
    pub fn circulant(cfg: &McConfig) -> Option<Self> {
        let n = cfg.n_steps;
        let m = 2 * n;
        let mut c: Vec<Complex<f64>> = (0..m)
            .map(|j| {
                let lag = if j <= n { j } else { m - j };
                Complex::new(fgn_autocov(&cfg.hurst, lag), 0.0)
            })
            .collect();
        let mut planner = FftPlanner::new();
        let fft = planner.plan_fft_forward(m);
        fft.process(&mut c);
        let tol = 1e-10 * c[0].re.abs().max(1.0);
        let mut sqrt_eig = Vec::with_capacity(m);
        for z in &c {
            if z.re < -tol {
                return None;
            }
            sqrt_eig.push((z.re.max(0.0) / m as f64).sqrt());
        }
        Some(FbmGenerator { n, scale: Self::scale(cfg), method: Method::Circulant { sqrt_eig, fft } })
    }

    /// Cholesky factor of the dense Toeplitz covariance.
    pub fn dense(cfg: &McConfig) -> Result<Self> {
        let n = cfg.n_steps;
        let row: Vec<f64> = (0..n).map(|k| fgn_autocov(&cfg.hurst, k)).collect();
        let cov = DMatrix::from_fn(n, n, |i, j| row[i.abs_diff(j)]);
        let chol = match cov.clone().cholesky() {
            Some(c) => c,
            None => {
                let jitter = DMatrix::<f64>::identity(n, n) * 1e-8;
                (cov + jitter).cholesky().ok_or_else(|| {
                    FbmhError::EmbeddingFailure("covariance not positive semidefinite beyond 1e-8 jitter".into())
                })?
            }
        };
        Ok(FbmGenerator { n, scale: Self::scale(cfg), method: Method::Dense { chol: chol.l() } })
    }

    pub fn is_circulant(&self) -> bool {
        matches!(self.method, Method::Circulant { .. })
    }

    /// Increments `ΔB_k`, `k = 0..n`.
    pub fn increments<R: Rng>(&self, rng: &mut R) -> Vec<f64> {
        match &self.method {
            Method::Circulant { sqrt_eig, fft } => {
                let mut w: Vec<Complex<f64>> = sqrt_eig
                    .iter()
                    .map(|&s| {
                        let a: f64 = rng.sample(StandardNormal);
                        let b: f64 = rng.sample(StandardNormal);
                        Complex::new(s * a, s * b)
                    })
                    .collect();
                fft.process(&mut w);
                w[..self.n].iter().map(|z| z.re * self.scale).collect()
            }
            Method::Dense { chol } => {
                let z = DVector::from_iterator(self.n, (0..self.n).map(|_| rng.sample::<f64, _>(StandardNormal)));
                (chol * z).iter().map(|x| x * self.scale).collect()
            }
        }
    }

    /// Path `B(t_k)`, `k = 0..=n`, starting at 0.
    pub fn path<R: Rng>(&self, rng: &mut R) -> Vec<f64> {
        let inc = self.increments(rng);
        let mut out = Vec::with_capacity(self.n + 1);
        out.push(0.0);
        let mut acc = 0.0;
        for d in inc {
            acc += d;
            out.push(acc);
        }
        out
    }
}

/// Path number `path` of the configuration.
pub fn fbm_path(cfg: &McConfig, path: u64) -> Result<Vec<f64>> {
    let g = FbmGenerator::new(cfg)?;
    Ok(g.path(&mut path_rng(cfg.seed, path)))
}
