use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{FbmhError, Result};
use crate::expansions::sigma::{a_const, sigma_h2};
use crate::hilbert::hurst::HurstParam;
use crate::numerics::special::{euler_gamma, gamma_fn, log_case_constant};
use crate::real::Real;

/// `coefficient · T^exponent · (log T if has_log)`
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExpansionTerm<T> {
    pub label: String,
    pub coefficient: T,
    pub exponent: T,
    pub has_log: bool,
}

impl<T: Real> ExpansionTerm<T> {
    fn new(label: &str, coefficient: T, exponent: T, has_log: bool) -> Self {
        ExpansionTerm { label: label.to_string(), coefficient, exponent, has_log }
    }

    pub fn eval(&self, t: T) -> T {
        let mut v = self.coefficient * if self.exponent == T::zero() { T::one() } else { t.powf(self.exponent) };
        if self.has_log {
            v *= t.ln();
        }
        v
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExpansionResult<T> {
    pub value: T,
    pub terms: Vec<ExpansionTerm<T>>,
    /// The neglected remainder is `O(T^remainder_exponent)`.
    pub remainder_exponent: T,
}

impl<T: Real> ExpansionResult<T> {
    fn from_terms(t: T, terms: Vec<ExpansionTerm<T>>, remainder_exponent: T) -> Self {
        let value = terms.iter().map(|x| x.eval(t)).sum();
        ExpansionResult { value, terms, remainder_exponent }
    }
}

fn check_horizon<T: Real>(t: T) -> Result<()> {
    if t > T::zero() && t.is_finite() {
        Ok(())
    } else {
        Err(FbmhError::domain(format!("horizon must be positive and finite, got {t}")))
    }
}

/// Large-`T` expansion of `‖f_T‖²`.
///
/// For H ≠ 3/4 the `T^{4H-2}` and `T^{4H-3}` corrections carry the same
/// factor `H²` as the linear part; for H = 3/4 the logarithmic form is used.
pub fn theorem_expansion<T: Real>(t: T, hurst: &HurstParam<T>) -> Result<ExpansionResult<T>> {
    check_horizon(t)?;
    let h = hurst.h();
    let one = T::one();
    let two = T::lit(2.0);
    let four = T::lit(4.0);
    if hurst.near_three_quarters() {
        let c = log_case_constant::<T>();
        let k = T::lit(9.0 / 8.0);
        let pi = T::PI();
        let terms = vec![
            ExpansionTerm::new("T log T", k, one, true),
            ExpansionTerm::new("log T", -k, T::zero(), true),
            ExpansionTerm::new("T", k * (c + (pi - T::lit(3.0)) / two), one, false),
            ExpansionTerm::new("1", k * (one - c - T::lit(13.0) * pi / T::lit(16.0)), T::zero(), false),
            ExpansionTerm::new("1/T", k, -one, false),
        ];
        return Ok(ExpansionResult::from_terms(t, terms, -two));
    }
    let a = a_const(hurst)?;
    let s = sigma_h2(hurst)?;
    let a2 = a * a;
    let q = four * h - one;
    let d = four * h - T::lit(3.0);
    let e = two * h - one;
    let terms = vec![
        ExpansionTerm::new("T", two * a2 * s, one, false),
        ExpansionTerm::new("1", two * a2 * (-s * q / two - e * (two * h + one)), T::zero(), false),
        ExpansionTerm::new("T^(4H-2)", h * h * four * e / d, four * h - two, false),
        ExpansionTerm::new("T^(4H-3)", -h * h * T::lit(8.0) * e * e / d, d, false),
    ];
    Ok(ExpansionResult::from_terms(t, terms, four * h - four))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum LemmaId {
    A2,
    A3,
    A4,
    A5,
    L1,
    L2,
    #[serde(rename = "L2_34")]
    L2_34,
}

impl LemmaId {
    pub const ALL: [LemmaId; 7] =
        [LemmaId::A2, LemmaId::A3, LemmaId::A4, LemmaId::A5, LemmaId::L1, LemmaId::L2, LemmaId::L2_34];

    pub fn as_str(&self) -> &'static str {
        match self {
            LemmaId::A2 => "A2",
            LemmaId::A3 => "A3",
            LemmaId::A4 => "A4",
            LemmaId::A5 => "A5",
            LemmaId::L1 => "L1",
            LemmaId::L2 => "L2",
            LemmaId::L2_34 => "L2_34",
        }
    }

    /// Whether the lemma parameter is a Hurst exponent rather than β.
    pub fn takes_hurst(&self) -> bool {
        matches!(self, LemmaId::L1 | LemmaId::L2 | LemmaId::L2_34)
    }
}

impl fmt::Display for LemmaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for LemmaId {
    type Err = FbmhError;

    fn from_str(s: &str) -> Result<Self> {
        LemmaId::ALL
            .iter()
            .copied()
            .find(|l| l.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| FbmhError::InvalidConfig(format!("unknown lemma '{s}'")))
    }
}

/// Half-width of the window around β = -1/2 where A5 switches to its log form.
pub const A5_LOG_EPS: f64 = 1e-6;

fn in_open<T: Real>(x: T, lo: f64, hi: f64, what: &str) -> Result<()> {
    if x > T::lit(lo) && x < T::lit(hi) {
        Ok(())
    } else {
        Err(FbmhError::domain(format!("{what} = {x} outside ({lo}, {hi})")))
    }
}

fn log_case<T: Real>(t: T) -> ExpansionResult<T> {
    let one = T::one();
    let terms = vec![
        ExpansionTerm::new("log T", one, T::zero(), true),
        ExpansionTerm::new("1", T::lit(2.0) * T::LN_2() + euler_gamma(), T::zero(), false),
        ExpansionTerm::new("1/T", -T::lit(0.5), -one, false),
        ExpansionTerm::new("1/T^2", -T::lit(3.0 / 8.0), -T::lit(2.0), false),
    ];
    ExpansionResult::from_terms(t, terms, -T::lit(3.0))
}

/// The truncated expansions of the appendix lemmas. `param` is β for A2,
/// A3 and A5, the Hurst exponent for L1 and L2, and ignored for A4 and L2_34.
pub fn lemma_expansion<T: Real>(id: LemmaId, t: T, param: T) -> Result<ExpansionResult<T>> {
    check_horizon(t)?;
    let one = T::one();
    let two = T::lit(2.0);
    let three = T::lit(3.0);
    let four = T::lit(4.0);
    let zero = T::zero();
    match id {
        LemmaId::A2 => {
            let b = param;
            in_open(b, -1.0, 0.0, "beta")?;
            let terms = vec![
                ExpansionTerm::new("T^b", one, b, false),
                ExpansionTerm::new("T^(b-1)", -b, b - one, false),
                ExpansionTerm::new("T^(b-2)", b * (b - one), b - two, false),
            ];
            Ok(ExpansionResult::from_terms(t, terms, b - three))
        }
        LemmaId::A3 => {
            let b = param;
            in_open(b, -1.0, 0.0, "beta")?;
            let terms = vec![
                ExpansionTerm::new("T^(2b)", one, two * b, false),
                ExpansionTerm::new("T^(2b-1)", -two * b, two * b - one, false),
                ExpansionTerm::new("T^(2b-2)", b * (three * b - two), two * b - two, false),
            ];
            Ok(ExpansionResult::from_terms(t, terms, two * b - three))
        }
        LemmaId::A4 => Ok(log_case(t)),
        LemmaId::A5 => {
            let b = param;
            in_open(b, -1.0, 0.5, "beta")?;
            if (b + T::lit(0.5)).abs() < T::lit(A5_LOG_EPS) {
                return Ok(log_case(t));
            }
            let d = two * b + one;
            let g = gamma_fn(one + b)?;
            let terms = vec![
                ExpansionTerm::new("1", -g * g / (two * (b * T::PI()).cos()), zero, false),
                ExpansionTerm::new("T^d", one / d, d, false),
                ExpansionTerm::new("T^(d-1)", -T::lit(0.5), d - one, false),
                ExpansionTerm::new("T^(d-2)", b * (b - one) / (d - two), d - two, false),
                ExpansionTerm::new("T^(d-3)", -b * (b - two) / two, d - three, false),
            ];
            Ok(ExpansionResult::from_terms(t, terms, d - four))
        }
        LemmaId::L1 => {
            let hurst = HurstParam::new(param)?;
            let h = hurst.h();
            in_open(h, 0.0, 0.75, "H")?;
            let g = gamma_fn(two * h)?;
            let s = sigma_h2(&hurst)?;
            let d = four * h - three;
            let terms = vec![
                ExpansionTerm::new("T", T::lit(0.5) * g * g * s, one, false),
                ExpansionTerm::new(
                    "1",
                    -T::lit(0.25) * g * g * s * (four * h + one) - two * h * h * g * g,
                    zero,
                    false,
                ),
                ExpansionTerm::new("T^(4H-2)", one / (two * d), four * h - two, false),
                ExpansionTerm::new("T^(4H-3)", -(four * h - two) / d, d, false),
            ];
            Ok(ExpansionResult::from_terms(t, terms, four * h - four))
        }
        LemmaId::L2 => {
            let hurst = HurstParam::new(param)?;
            in_open(hurst.h(), 0.5, 1.0, "H")?;
            if hurst.near_three_quarters() {
                return Err(FbmhError::domain("L2 at H = 3/4 uses the L2_34 expansion"));
            }
            let b = hurst.beta_high();
            let g = gamma_fn(one + b)?;
            let half_g2 = T::lit(0.5) * g * g;
            let k = two * b + three;
            let lin = k * (one - one / (b * T::PI()).cos());
            let terms = vec![
                ExpansionTerm::new("T", half_g2 * lin, one, false),
                ExpansionTerm::new("1", half_g2 * (-lin * k / two - (b + one) * (b + three)), zero, false),
                ExpansionTerm::new("T^(2b+2)", one / ((b + one) * (two * b + one)), two * b + two, false),
                ExpansionTerm::new("T^(2b+1)", -two / (two * b + one), two * b + one, false),
            ];
            Ok(ExpansionResult::from_terms(t, terms, two * b))
        }
        LemmaId::L2_34 => {
            let c = log_case_constant::<T>();
            let pi = T::PI();
            let terms = vec![
                ExpansionTerm::new("T log T", two, one, true),
                ExpansionTerm::new("log T", -two, zero, true),
                ExpansionTerm::new("T", two * (c + (pi - three) / two), one, false),
                ExpansionTerm::new("1", two * (one - c - T::lit(13.0) * pi / T::lit(16.0)), zero, false),
                ExpansionTerm::new("1/T", two, -one, false),
            ];
            Ok(ExpansionResult::from_terms(t, terms, -two))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn value_is_sum_of_terms() {
        let r = theorem_expansion(7.0, &HurstParam::new(0.3).unwrap()).unwrap();
        let s: f64 = r.terms.iter().map(|x| x.eval(7.0)).sum();
        assert_eq!(r.value, s);
    }

    #[test]
    fn brownian_theorem_is_exact_line() {
        let r = theorem_expansion(10.0f64, &HurstParam::new(0.5).unwrap()).unwrap();
        assert!((r.value - 9.5).abs() < 1e-13);
    }

    #[test]
    fn a4_value() {
        let r = lemma_expansion(LemmaId::A4, 10.0, 0.0).unwrap();
        let expect = 10f64.ln() + 2.0 * 2f64.ln() + 0.577_215_664_901_532_9 - 0.05 - 0.00375;
        assert!((r.value - expect).abs() < 1e-14);
        assert!((r.value - 4.212_345_2).abs() < 1e-7);
        assert_eq!(r.remainder_exponent, -3.0);
    }

    #[test]
    fn a5_dispatches_to_log_case() {
        let a = lemma_expansion(LemmaId::A5, 30.0, -0.5 + 1e-7).unwrap();
        let b = lemma_expansion(LemmaId::A4, 30.0, 0.0).unwrap();
        assert_eq!(a.value, b.value);
        let c = lemma_expansion(LemmaId::A5, 30.0, -0.5 + 1e-3).unwrap();
        assert_eq!(c.terms.len(), 5);
    }

    #[test]
    fn parameter_ranges() {
        assert!(lemma_expansion(LemmaId::A2, 10.0, 0.1).is_err());
        assert!(lemma_expansion(LemmaId::A3, 10.0, -1.0).is_err());
        assert!(lemma_expansion(LemmaId::A5, 10.0, 0.5).is_err());
        assert!(lemma_expansion(LemmaId::L1, 10.0, 0.8).is_err());
        assert!(lemma_expansion(LemmaId::L2, 10.0, 0.4).is_err());
        assert!(lemma_expansion(LemmaId::L2, 10.0, 0.75).is_err());
        assert!(lemma_expansion(LemmaId::A2, 0.0, -0.5).is_err());
    }

    #[test]
    fn lemma_ids_parse() {
        for id in LemmaId::ALL {
            assert_eq!(id.as_str().parse::<LemmaId>().unwrap(), id);
        }
        assert!("A9".parse::<LemmaId>().is_err());
    }
}
