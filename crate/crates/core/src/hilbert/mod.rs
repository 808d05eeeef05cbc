//! The canonical Hilbert space of fractional Brownian motion on `[0, T]`.

pub mod bv;
pub mod hurst;
pub mod inner;
pub mod oracle;
pub mod ou;

pub use bv::{measure_of, BvFunction, Piece, StieltjesMeasure, Term};
pub use hurst::{Branch, FbmCovariance, HurstParam};
pub use inner::{inner_product, kernel_potential};
pub use oracle::{discrete_inner_oracle, discrete_norm_oracle_2d, increment_covariance};
pub use ou::{b_t, ou_variance, rho1};
