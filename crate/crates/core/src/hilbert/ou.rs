//! Second-moment functionals of the fractional Ornstein–Uhlenbeck process
//! `η_t = ∫_0^t e^{-(t-u)} dB^H_u`.

use crate::error::{FbmhError, Result};
use crate::hilbert::bv::BvFunction;
use crate::hilbert::hurst::HurstParam;
use crate::hilbert::inner::inner_product;
use crate::numerics::cubature::{integrate_2d_weighted, AxisWeights, Domain2d};
use crate::numerics::quadrature::QuadratureSpec;
use crate::numerics::special::{lower_inc_gamma, scaled_lower_inc_ext};
use crate::real::Real;

/// `E[η_t η_s] = ⟨h_t, h_s⟩` with `h_t(u) = e^{u-t} 1_{[0,t]}(u)`.
pub fn rho1<T: Real>(t: T, s: T, hurst: &HurstParam<T>, spec: &QuadratureSpec<T>) -> Result<T> {
    if !(t >= T::zero() && s >= T::zero()) {
        return Err(FbmhError::domain(format!("times must be nonnegative, got ({t}, {s})")));
    }
    if t == T::zero() || s == T::zero() {
        return Ok(T::zero());
    }
    let end = t.max(s);
    let ht = BvFunction::ou_kernel(t, T::one(), end)?;
    let hs = BvFunction::ou_kernel(s, T::one(), end)?;
    inner_product(&ht, &hs, hurst, spec)
}

/// `E[η_t²] = H [e^{-t} ∫_0^t e^{u-t} u^{2H-1} du + ∫_0^t e^{-u} u^{2H-1} du]`.
pub fn ou_variance<T: Real>(t: T, hurst: &HurstParam<T>, spec: &QuadratureSpec<T>) -> Result<T> {
    if !(t >= T::zero()) {
        return Err(FbmhError::domain(format!("time must be nonnegative, got {t}")));
    }
    if t == T::zero() {
        return Ok(T::zero());
    }
    let beta = hurst.beta_low();
    let b = scaled_lower_inc_ext(beta, t, spec)?;
    let a = lower_inc_gamma(beta, t, spec)?;
    Ok(hurst.h() * ((-t).exp() * b + a))
}

/// `b_T = (1/T) ∫_0^T E[η_t²] dt`, evaluated as
/// `(H/T) ∫∫_{0≤x≤z≤T} (e^{x-2z} + e^{-x}) x^{2H-1} dx dz`.
pub fn b_t<T: Real>(horizon: T, hurst: &HurstParam<T>, spec: &QuadratureSpec<T>) -> Result<T> {
    if !(horizon > T::zero()) {
        return Err(FbmhError::domain(format!("horizon must be positive, got {horizon}")));
    }
    let two = T::lit(2.0);
    let r = integrate_2d_weighted(
        |x: T, z: T| (x - two * z).exp() + (-x).exp(),
        Domain2d::Triangle { t: horizon },
        AxisWeights { x: hurst.beta_low(), z: T::zero() },
        spec,
    )
    .map_err(|e| e.within("b_T"))?;
    Ok(hurst.h() * r.value / horizon)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn brownian_variance_closed_form() {
        let hp = HurstParam::new(0.5).unwrap();
        for &t in &[0.1f64, 1.0, 7.0] {
            let v = ou_variance(t, &hp, &QuadratureSpec::default_1d()).unwrap();
            assert!((v - (1.0 - (-2.0 * t).exp()) / 2.0).abs() < 1e-11);
        }
    }

    #[test]
    fn zero_time() {
        let hp = HurstParam::new(0.3).unwrap();
        assert_eq!(rho1(0.0, 2.0, &hp, &QuadratureSpec::default_1d()).unwrap(), 0.0);
        assert_eq!(ou_variance(0.0, &hp, &QuadratureSpec::default_1d()).unwrap(), 0.0);
        assert!(rho1(-1.0, 2.0, &hp, &QuadratureSpec::default_1d()).is_err());
    }

    #[test]
    fn brownian_b_t() {
        let hp = HurstParam::new(0.5).unwrap();
        let v = b_t(10.0, &hp, &QuadratureSpec::default_2d()).unwrap();
        let exact = 0.5 - (1.0 - (-20f64).exp()) / 40.0;
        assert!((v - exact).abs() < 1e-8, "{v}");
    }
}
