//! Simulation of fractional Ornstein–Uhlenbeck paths and the stationary
//! covariance functionals used to cross-check the asymptotic variance.

pub mod config;
pub mod fbm;
pub mod fou;
pub mod mc;
pub mod stationary;

pub use config::{McConfig, McEstimate};
pub use fbm::{fbm_path, fgn_autocov, path_rng, FbmGenerator};
pub use fou::fou_path;
pub use mc::{grid_variance, mc_wt_variance, wt_sample};
pub use stationary::{default_r_max, rho_sq_integral, rho_stationary, RhoSqIntegral, DEFAULT_T_ANCHOR};
