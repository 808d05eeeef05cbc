//! Quadrature values of the quantities expanded in [`super::series`].

use crate::error::Result;
use crate::expansions::series::LemmaId;
use crate::ftnorm::{j1, j2_signed, l23pair};
use crate::hilbert::hurst::HurstParam;
use crate::numerics::cubature::{integrate_2d_weighted, AxisWeights, Domain2d};
use crate::numerics::quadrature::{integrate_1d, QuadratureSpec, SingularityAnnotation};
use crate::numerics::special::scaled_lower_inc_ext;
use crate::real::Real;

/// `∫_0^1 (1-t)^{-1/2} (1 - e^{-tT}) / t dt`
pub fn log_case_integral<T: Real>(t: T, spec: &QuadratureSpec<T>) -> Result<T> {
    let f = |u: T| {
        let g = if u == T::zero() { t } else { -(-u * t).exp_m1() / u };
        g / (T::one() - u).sqrt()
    };
    Ok(integrate_1d(f, T::zero(), T::one(), &[SingularityAnnotation::upper(-T::lit(0.5))?], spec)?.value)
}

/// Independent quadrature value of the quantity a lemma expands.
pub fn lemma_oracle<T: Real>(id: LemmaId, t: T, param: T, spec: &QuadratureSpec<T>) -> Result<T> {
    let two = T::lit(2.0);
    match id {
        LemmaId::A2 => scaled_lower_inc_ext(param, t, spec),
        LemmaId::A3 => Ok(integrate_2d_weighted(
            |x: T, z: T| (x + z - two * t).exp(),
            Domain2d::BandAbove { t },
            AxisWeights::both(param),
            spec,
        )?
        .value),
        LemmaId::A4 => log_case_integral(t, spec),
        LemmaId::A5 => Ok(integrate_2d_weighted(
            |x: T, z: T| (x - z).exp(),
            Domain2d::Triangle { t },
            AxisWeights::both(param),
            spec,
        )?
        .value),
        LemmaId::L1 => {
            let b = HurstParam::new(param)?.beta_low();
            Ok(j1(t, b, spec)? + j2_signed(t, b, -T::one(), spec)?)
        }
        LemmaId::L2 | LemmaId::L2_34 => {
            let h = if id == LemmaId::L2_34 { T::lit(0.75) } else { param };
            let b = HurstParam::new(h)?.beta_high();
            Ok(j1(t, b, spec)? + j2_signed(t, b, T::one(), spec)? + l23pair(t, b, spec)?)
        }
    }
}
