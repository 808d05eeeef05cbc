use serde::{Deserialize, Serialize};

use crate::error::{FbmhError, Result};
use crate::real::Real;

/// Half-width of the window treated as exactly H = 1/2.
pub const BROWNIAN_EPS: f64 = 1e-12;
/// Half-width of the window around H = 1/4 where the limit form of σ_H² is used.
pub const QUARTER_EPS: f64 = 1e-6;
/// Half-width of the window around H = 3/4 treated as the pole / log case.
pub const THREE_QUARTER_EPS: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    #[serde(rename = "lowH")]
    LowH,
    Brownian,
    #[serde(rename = "highH")]
    HighH,
}

impl Branch {
    pub fn as_str(&self) -> &'static str {
        match self {
            Branch::LowH => "lowH",
            Branch::Brownian => "brownian",
            Branch::HighH => "highH",
        }
    }
}

/// Validated Hurst exponent.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HurstParam<T> {
    h: T,
    branch: Branch,
}

impl<T: Real> HurstParam<T> {
    pub fn new(h: T) -> Result<Self> {
        if !(h > T::zero() && h < T::one()) {
            return Err(FbmhError::domain(format!("Hurst exponent must lie in (0, 1), got {h}")));
        }
        let d = h - T::lit(0.5);
        let branch = if d.abs() < T::lit(BROWNIAN_EPS) {
            Branch::Brownian
        } else if d < T::zero() {
            Branch::LowH
        } else {
            Branch::HighH
        };
        Ok(HurstParam { h, branch })
    }

    #[inline]
    pub fn h(&self) -> T {
        self.h
    }

    pub fn branch(&self) -> Branch {
        self.branch
    }

    /// `2H - 1`
    #[inline]
    pub fn beta_low(&self) -> T {
        T::lit(2.0) * self.h - T::one()
    }

    /// `2H - 2`
    #[inline]
    pub fn beta_high(&self) -> T {
        T::lit(2.0) * self.h - T::lit(2.0)
    }

    pub fn near_quarter(&self) -> bool {
        (self.h - T::lit(0.25)).abs() < T::lit(QUARTER_EPS)
    }

    pub fn near_three_quarters(&self) -> bool {
        (self.h - T::lit(0.75)).abs() < T::lit(THREE_QUARTER_EPS)
    }
}

/// Covariance of fractional Brownian motion, `R(s,t) = ½(s^{2H} + t^{2H} - |s-t|^{2H})`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FbmCovariance<T> {
    pub hurst: HurstParam<T>,
}

impl<T: Real> FbmCovariance<T> {
    pub fn new(hurst: HurstParam<T>) -> Self {
        FbmCovariance { hurst }
    }

    pub fn eval(&self, s: T, t: T) -> T {
        let two_h = T::lit(2.0) * self.hurst.h();
        let p = |x: T| if x == T::zero() { T::zero() } else { x.abs().powf(two_h) };
        T::lit(0.5) * (p(s) + p(t) - p(s - t))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn branches() {
        assert_eq!(HurstParam::new(0.3f64).unwrap().branch(), Branch::LowH);
        assert_eq!(HurstParam::new(0.5f64).unwrap().branch(), Branch::Brownian);
        assert_eq!(HurstParam::new(0.5 + 1e-13f64).unwrap().branch(), Branch::Brownian);
        assert_eq!(HurstParam::new(0.7f64).unwrap().branch(), Branch::HighH);
        assert!(HurstParam::new(0.0f64).is_err());
        assert!(HurstParam::new(1.0f64).is_err());
        assert!(HurstParam::new(f64::NAN).is_err());
    }

    #[test]
    fn exponents_and_flags() {
        let h = HurstParam::new(0.25f64).unwrap();
        assert!((h.beta_low() + 0.5).abs() < 1e-15);
        assert!((h.beta_high() + 1.5).abs() < 1e-15);
        assert!(h.near_quarter());
        assert!(HurstParam::new(0.75f64).unwrap().near_three_quarters());
        assert!(!HurstParam::new(0.7500001f64).unwrap().near_three_quarters());
    }

    #[test]
    fn covariance_properties() {
        let r = FbmCovariance::new(HurstParam::new(0.3f64).unwrap());
        assert!((r.eval(2.0, 2.0) - 2f64.powf(0.6)).abs() < 1e-15);
        assert_eq!(r.eval(0.0, 1.7), 0.0);
        assert_eq!(r.eval(0.4, 1.1), r.eval(1.1, 0.4));
        assert!((r.eval(1.0, 2.0) - 0.5 * 2f64.powf(0.6)).abs() < 1e-15);
    }
}
