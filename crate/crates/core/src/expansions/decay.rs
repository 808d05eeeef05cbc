use serde::Serialize;

use crate::error::{FbmhError, Result};
use crate::expansions::sigma::sigma_consts;
use crate::ftnorm::norm_over_2t;
use crate::hilbert::hurst::HurstParam;
use crate::numerics::quadrature::QuadratureSpec;
use crate::real::Real;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DecayRow<T> {
    #[serde(rename = "T")]
    pub t: T,
    #[serde(rename = "norm_over_2T")]
    pub norm_over_2t: T,
    pub residual: T,
    pub scaled_residual: T,
}

/// Exponent `min(1, 3 - 4H)` of the decay bound.
pub fn decay_exponent<T: Real>(hurst: &HurstParam<T>) -> T {
    (T::lit(3.0) - T::lit(4.0) * hurst.h()).min(T::one())
}

/// `|‖f_T‖²/(2T) - σ²| · T^{min(1, 3-4H)}` along an increasing grid.
pub fn decay_check<T: Real>(hurst: &HurstParam<T>, grid: &[T], spec: &QuadratureSpec<T>) -> Result<Vec<DecayRow<T>>> {
    if grid.is_empty() || grid.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(FbmhError::InvalidConfig("T grid must be nonempty and strictly increasing".into()));
    }
    let sigma2 = sigma_consts(hurst)?.sigma2;
    let p = decay_exponent(hurst);
    grid.iter()
        .map(|&t| {
            let v = norm_over_2t(t, hurst, spec)?;
            let residual = (v - sigma2).abs();
            Ok(DecayRow { t, norm_over_2t: v, residual, scaled_residual: residual * t.powf(p) })
        })
        .collect()
}
