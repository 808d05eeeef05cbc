//! Numerics for the canonical Hilbert space of fractional Brownian motion:
//! singular quadrature, the Stieltjes-form inner product, the norm of the
//! exponential kernel `e^{-|t-s|}` in the tensor-square space, its asymptotic
//! expansions, and Monte Carlo checks on the fractional Ornstein–Uhlenbeck
//! process.

// negated comparisons are how NaN gets rejected; the Kronrod rule keeps its
// published digits and QUADPACK loop shape
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision, clippy::needless_range_loop)]

pub mod error;
pub mod expansions;
pub mod fousim;
pub mod ftnorm;
pub mod hilbert;
pub mod numerics;
pub mod real;
pub mod verify;

pub use error::{FbmhError, Result};
pub use real::Real;

pub type QuadSpec = numerics::QuadratureSpec<f64>;
pub type Integral = numerics::IntegralResult<f64>;
pub type Hurst = hilbert::HurstParam<f64>;
pub type BvFn = hilbert::BvFunction<f64>;
