use serde::Serialize;

use crate::error::{FbmhError, Result};
use crate::hilbert::hurst::HurstParam;
use crate::hilbert::ou::rho1;
use crate::numerics::quadrature::{annotated_with_budget, Budget, QuadratureSpec};

/// Anchor time used for the stationary covariance.
///
/// `η_t` differs from the stationary process by `e^{-t} Z_0`, so at `t = 50`
/// the transient is below `e^{-50}` relative.
pub const DEFAULT_T_ANCHOR: f64 = 50.0;

/// `ρ(r) ≈ E[η_{t₀} η_{t₀+r}]`.
pub fn rho_stationary(r: f64, hurst: &HurstParam<f64>, t_anchor: f64, spec: &QuadratureSpec<f64>) -> Result<f64> {
    if !(r >= 0.0 && r.is_finite()) {
        return Err(FbmhError::domain(format!("lag must be nonnegative, got {r}")));
    }
    if !(t_anchor > 0.0) {
        return Err(FbmhError::domain(format!("anchor must be positive, got {t_anchor}")));
    }
    rho1(t_anchor, t_anchor + r, hurst, spec)
}

pub fn default_r_max(hurst: &HurstParam<f64>) -> f64 {
    if hurst.h() <= 0.5 {
        60.0
    } else {
        200.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RhoSqIntegral {
    /// `∫_0^{r_max} ρ(r)² dr`
    pub value: f64,
    pub abs_error_estimate: f64,
    pub r_max: f64,
    /// Power-law extrapolation of `∫_{r_max}^∞ ρ²`; infinite if the fit fails.
    pub tail_estimate: f64,
    /// Set when the extrapolated tail exceeds 1% of `value`.
    pub tail_warning: bool,
}

pub fn rho_sq_integral(hurst: &HurstParam<f64>, r_max: f64, spec: &QuadratureSpec<f64>) -> Result<RhoSqIntegral> {
    if !(r_max > 0.0 && r_max.is_finite()) {
        return Err(FbmhError::domain(format!("r_max must be positive, got {r_max}")));
    }
    let inner = QuadratureSpec { rel_tol: spec.rel_tol / 10.0, abs_tol: spec.abs_tol / 10.0, ..*spec };
    let rho = |r: f64| rho_stationary(r, hurst, DEFAULT_T_ANCHOR, &inner);
    let budget = Budget::new(spec.max_evaluations);
    let mut cuts = vec![0.0];
    cuts.extend([1.0, 10.0].into_iter().filter(|&c| c < r_max));
    cuts.push(r_max);
    let (mut value, mut err) = (0.0, 0.0);
    for w in cuts.windows(2) {
        let r = annotated_with_budget(|r| rho(r).map(|v| v * v), w[0], w[1], &[], spec, &budget)
            .map_err(|e| e.within("rho_sq_integral"))?;
        value += r.value;
        err += r.abs_error_estimate;
    }

    let (r1, r2) = (0.5 * r_max, r_max);
    let (p1, p2) = (rho(r1)?, rho(r2)?);
    let tail_estimate = if p1 * p2 > 0.0 {
        let decay = (p1 / p2).ln() / (r2 / r1).ln();
        if 2.0 * decay > 1.0 {
            p2 * p2 * r2 / (2.0 * decay - 1.0)
        } else {
            f64::INFINITY
        }
    } else {
        f64::INFINITY
    };
    Ok(RhoSqIntegral {
        value,
        abs_error_estimate: err,
        r_max,
        tail_estimate,
        tail_warning: !(tail_estimate <= 0.01 * value.abs()),
    })
}
