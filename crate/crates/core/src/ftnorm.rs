//! `‖f_T‖²` in the tensor-square space for `f_T(t,s) = e^{-|t-s|}` on `[0,T]²`.
//!
//! Each branch is reduced to a handful of two-dimensional integrals with
//! weight `x^β z^β`. The pieces are evaluated exactly (to quadrature
//! tolerance); no asymptotic truncation happens here.
//!
//! Regions used below, all inside `[0,T]²` and above the diagonal:
//! `A = {x ≤ z, x + z ≤ T}` and `B = {x ≤ z, x + z ≥ T}`.

use serde::Serialize;

use crate::error::{FbmhError, Result};
use crate::hilbert::hurst::{Branch, HurstParam};
use crate::hilbert::oracle::discrete_norm_oracle_2d;
use crate::numerics::cubature::{integrate_2d_weighted, AxisWeights, Domain2d};
use crate::numerics::quadrature::QuadratureSpec;
use crate::numerics::special::{lower_inc_gamma, scaled_lower_inc_ext};
use crate::real::Real;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Parts<T> {
    LowH {
        #[serde(rename = "I1")]
        i1: T,
        #[serde(rename = "I2")]
        i2: T,
        #[serde(rename = "I3")]
        i3: T,
    },
    HighH {
        #[serde(rename = "J1")]
        j1: T,
        #[serde(rename = "J2bar")]
        j2bar: T,
        #[serde(rename = "L23pair")]
        l23pair: T,
    },
    Brownian {
        closed_form: T,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NormComponents<T> {
    pub branch: Branch,
    #[serde(flatten)]
    pub parts: Parts<T>,
    pub total: T,
}

fn check_horizon<T: Real>(t: T) -> Result<()> {
    if t > T::zero() && t.is_finite() {
        Ok(())
    } else {
        Err(FbmhError::domain(format!("horizon must be positive and finite, got {t}")))
    }
}

fn quad2<T: Real, G: Fn(T, T) -> T>(name: &str, g: G, d: Domain2d<T>, beta: T, spec: &QuadratureSpec<T>) -> Result<T> {
    integrate_2d_weighted(g, d, AxisWeights::both(beta), spec).map(|r| r.value).map_err(|e| e.within(name))
}

/// `½(e^{-2u} - 1 + 2u)` without cancellation for small `u`.
pub fn half_expm1_plus<T: Real>(u: T) -> T {
    let half = T::lit(0.5);
    if u.abs() < T::lit(0.1) {
        // Σ_{k≥2} (-2u)^k / k!
        let y = -T::lit(2.0) * u;
        let mut term = y * y * half;
        let mut sum = term;
        for k in 3..16 {
            term = term * y / T::lit(k as f64);
            sum += term;
        }
        sum * half
    } else {
        half * ((-T::lit(2.0) * u).exp_m1() + T::lit(2.0) * u)
    }
}

/// `J₁ = ¼∫_{x+z≥T} e^{x+z-2T} + ½∫_{[0,T]²} e^{-x-z}(T - x∨z)²
///      - ½∫_{x+z≤T} e^{-x-z}(u² + u - ½) + ∫_{x≤z} e^{-x-z}(z-x)(T-z)`,
/// `u = T - x - z`, all against `x^β z^β`. The two middle terms are combined
/// on `A` and `B` so their `O(T²)` parts cancel analytically.
pub fn j1<T: Real>(t: T, beta: T, spec: &QuadratureSpec<T>) -> Result<T> {
    check_horizon(t)?;
    let half = T::lit(0.5);
    let two = T::lit(2.0);
    let a = quad2(
        "J1[A]",
        |x: T, z: T| (-x - z).exp() * (x * (two * (t - z) - x) - (t - x - z) + half),
        Domain2d::TriangleBelow { t },
        beta,
        spec,
    )?;
    let b = quad2(
        "J1[B]",
        |x: T, z: T| {
            let tz = t - z;
            (-x - z).exp() * tz * tz + half * (x + z - two * t).exp()
        },
        Domain2d::TriangleAbove { t },
        beta,
        spec,
    )?;
    let d = quad2("J1[diag]", |x: T, z: T| (-x - z).exp() * (z - x) * (t - z), Domain2d::Triangle { t }, beta, spec)?;
    Ok(a + b + d)
}

/// Literal four-term form of [`j1`]; suffers from cancellation for large `T`.
pub fn j1_literal<T: Real>(t: T, beta: T, spec: &QuadratureSpec<T>) -> Result<T> {
    check_horizon(t)?;
    let half = T::lit(0.5);
    let quarter = T::lit(0.25);
    let two = T::lit(2.0);
    let t1 = quad2("J1a", |x: T, z: T| (x + z - two * t).exp(), Domain2d::BandAbove { t }, beta, spec)?;
    let t2 = quad2(
        "J1b",
        |x: T, z: T| {
            let m = t - x.max(z);
            (-x - z).exp() * m * m
        },
        Domain2d::Square { t },
        beta,
        spec,
    )?;
    let t3 = quad2(
        "J1c",
        |x: T, z: T| {
            let u = t - x - z;
            (-x - z).exp() * (u * u + u - half)
        },
        Domain2d::BandBelow { t },
        beta,
        spec,
    )?;
    let t4 = quad2("J1d", |x: T, z: T| (-x - z).exp() * (z - x) * (t - z), Domain2d::Triangle { t }, beta, spec)?;
    Ok(quarter * t1 + half * t2 - half * t3 + t4)
}

/// `∫_{x≤z} e^{x-z} [sign·(z-x)(T-z) + T - z - ½] x^β z^β`.
/// `sign = -1` gives `J₂`, `sign = +1` gives `J̄₂`.
pub fn j2_signed<T: Real>(t: T, beta: T, sign: T, spec: &QuadratureSpec<T>) -> Result<T> {
    check_horizon(t)?;
    let half = T::lit(0.5);
    quad2(
        if sign < T::zero() { "J2" } else { "J2bar" },
        |x: T, z: T| (x - z).exp() * (sign * (z - x) * (t - z) + t - z - half),
        Domain2d::Triangle { t },
        beta,
        spec,
    )
}

/// `I₂₁ = ∫_{[0,T]²} e^{-x-s}[hi - lo + ½(e^{2hi} - e^{2lo})] x^β s^β`,
/// `hi = x∧s`, `lo = 0∨(x+s-T)`, folded onto `A` and `B`.
pub fn i21<T: Real>(t: T, beta: T, spec: &QuadratureSpec<T>) -> Result<T> {
    check_horizon(t)?;
    let half = T::lit(0.5);
    let two = T::lit(2.0);
    let a = quad2(
        "I21[A]",
        |x: T, s: T| {
            let e = (-x - s).exp();
            e * x + half * ((x - s).exp() - e)
        },
        Domain2d::TriangleBelow { t },
        beta,
        spec,
    )?;
    let b = quad2(
        "I21[B]",
        |x: T, s: T| (-x - s).exp() * (t - s) + half * ((x - s).exp() - (x + s - two * t).exp()),
        Domain2d::TriangleAbove { t },
        beta,
        spec,
    )?;
    Ok(two * (a + b))
}

/// `I₂₂ = ∫_{x≤s} (e^{-x-s} - e^{x-s})(s - x) x^β s^β`.
pub fn i22<T: Real>(t: T, beta: T, spec: &QuadratureSpec<T>) -> Result<T> {
    check_horizon(t)?;
    quad2("I22", |x: T, s: T| ((-x - s).exp() - (x - s).exp()) * (s - x), Domain2d::Triangle { t }, beta, spec)
}

/// `I₃ = 2(A² + B²)` with `A = ∫_0^T e^{-u}u^β du`, `B = e^{-T}∫_0^T e^x x^β dx`.
pub fn i3<T: Real>(t: T, beta: T, spec: &QuadratureSpec<T>) -> Result<T> {
    check_horizon(t)?;
    let one_d = QuadratureSpec { rel_tol: spec.rel_tol / T::lit(10.0), ..*spec };
    let a = lower_inc_gamma(beta, t, &one_d).map_err(|e| e.within("I3"))?;
    let b = scaled_lower_inc_ext(beta, t, &one_d).map_err(|e| e.within("I3"))?;
    Ok(T::lit(2.0) * (a * a + b * b))
}

/// `∫∫_{x+z≤T} e^{-x-z} [u - ½ + ½e^{-2u}] x^β z^β`, `u = T - x - z`.
pub fn l23pair<T: Real>(t: T, beta: T, spec: &QuadratureSpec<T>) -> Result<T> {
    check_horizon(t)?;
    let v = quad2(
        "L23pair",
        |x: T, z: T| (-x - z).exp() * half_expm1_plus(t - x - z),
        Domain2d::TriangleBelow { t },
        beta,
        spec,
    )?;
    // integrand symmetric in (x, z)
    Ok(T::lit(2.0) * v)
}

/// `T - (1 - e^{-2T})/2`
pub fn brownian_closed_form<T: Real>(t: T) -> T {
    t + T::lit(0.5) * (-T::lit(2.0) * t).exp_m1()
}

/// `‖f_T‖²` with its branch decomposition.
pub fn norm_ft_sq<T: Real>(t: T, hurst: &HurstParam<T>, spec: &QuadratureSpec<T>) -> Result<NormComponents<T>> {
    check_horizon(t)?;
    let h = hurst.h();
    let two = T::lit(2.0);
    match hurst.branch() {
        Branch::Brownian => {
            let c = brownian_closed_form(t);
            Ok(NormComponents { branch: Branch::Brownian, parts: Parts::Brownian { closed_form: c }, total: c })
        }
        Branch::LowH => {
            let beta = hurst.beta_low();
            let i1 = T::lit(4.0) * (j1(t, beta, spec)? + j2_signed(t, beta, -T::one(), spec)?);
            let i2 = two * (i21(t, beta, spec)? + i22(t, beta, spec)?);
            let i3v = i3(t, beta, spec)?;
            let total = h * h * (i1 + two * i2 + i3v);
            Ok(NormComponents { branch: Branch::LowH, parts: Parts::LowH { i1, i2, i3: i3v }, total })
        }
        Branch::HighH => {
            let beta = hurst.beta_high();
            let j1v = j1(t, beta, spec)?;
            let j2bar = j2_signed(t, beta, T::one(), spec)?;
            let l = l23pair(t, beta, spec)?;
            let c = two * h * (two * h - T::one());
            let total = c * c * (j1v + j2bar + l);
            Ok(NormComponents { branch: Branch::HighH, parts: Parts::HighH { j1: j1v, j2bar, l23pair: l }, total })
        }
    }
}

/// `‖f_T‖² / (2T)`
pub fn norm_over_2t<T: Real>(t: T, hurst: &HurstParam<T>, spec: &QuadratureSpec<T>) -> Result<T> {
    Ok(norm_ft_sq(t, hurst, spec)?.total / (T::lit(2.0) * t))
}

/// Independent estimate of `‖f_T‖²` from the discretised space with `n` cells.
pub fn norm_ft_sq_bruteforce(t: f64, hurst: &HurstParam<f64>, n: usize) -> f64 {
    discrete_norm_oracle_2d(|a, b| (-(a - b).abs()).exp(), hurst, t, n)
}
