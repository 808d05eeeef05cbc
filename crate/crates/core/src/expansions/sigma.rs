use serde::Serialize;

use crate::error::{FbmhError, Result};
use crate::hilbert::hurst::HurstParam;
use crate::numerics::special::gamma_fn;
use crate::real::Real;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SigmaConstants<T> {
    pub a: T,
    #[serde(rename = "sigmaH2")]
    pub sigma_h2: T,
    pub sigma2: T,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AsymptoteParams<T> {
    pub slope: T,
    pub intercept: T,
}

/// `a = H Γ(2H)`
pub fn a_const<T: Real>(hurst: &HurstParam<T>) -> Result<T> {
    let h = hurst.h();
    Ok(h * gamma_fn(T::lit(2.0) * h)?)
}

/// `(4H-1)/cos(2Hπ)`, continued through its removable singularity at H = 1/4.
fn ratio<T: Real>(hurst: &HurstParam<T>) -> T {
    let h = hurst.h();
    if hurst.near_quarter() {
        let x = T::lit(2.0) * T::PI() * (h - T::lit(0.25));
        let x2 = x * x;
        -T::lit(2.0) / T::PI() * (T::one() + x2 / T::lit(6.0) + T::lit(7.0) * x2 * x2 / T::lit(360.0))
    } else {
        (T::lit(4.0) * h - T::one()) / (T::lit(2.0) * h * T::PI()).cos()
    }
}

/// `σ_H² = (4H-1)(1 - 1/cos(2Hπ))`
pub fn sigma_h2<T: Real>(hurst: &HurstParam<T>) -> Result<T> {
    if hurst.near_three_quarters() {
        return Err(FbmhError::PoleAtThreeQuarters);
    }
    Ok(T::lit(4.0) * hurst.h() - T::one() - ratio(hurst))
}

pub fn sigma_consts<T: Real>(hurst: &HurstParam<T>) -> Result<SigmaConstants<T>> {
    let a = a_const(hurst)?;
    let s = sigma_h2(hurst)?;
    Ok(SigmaConstants { a, sigma_h2: s, sigma2: a * a * s })
}

/// Slope and intercept of the oblique asymptote of `‖f_T‖²/2`.
pub fn asymptote_params<T: Real>(hurst: &HurstParam<T>) -> Result<AsymptoteParams<T>> {
    let c = sigma_consts(hurst)?;
    let h = hurst.h();
    let two = T::lit(2.0);
    let intercept =
        -((T::lit(4.0) * h - T::one()) / two) * c.sigma2 - (two * h - T::one()) * (two * h + T::one()) * c.a * c.a;
    Ok(AsymptoteParams { slope: c.sigma2, intercept })
}
