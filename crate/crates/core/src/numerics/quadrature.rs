//! One-dimensional adaptive Gauss–Kronrod quadrature with endpoint
//! singularity handling.
//!
//! Singular endpoints are removed by the substitution `v = |x - s|^{1+β}`,
//! which turns `|x - s|^β dx` into `dv / (1+β)`. The same map is used when the
//! singular point sits just outside the interval, so near-singular inner
//! integrals of iterated cubature stay cheap.

use std::cell::Cell;

use serde::{Deserialize, Serialize};

use crate::error::{FbmhError, Result};
use crate::real::Real;

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// Tolerances and work limits for an adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureSpec<T> {
    pub rel_tol: T,
    pub abs_tol: T,
    pub max_subdivisions: usize,
    pub max_evaluations: usize,
}

impl<T: Real> QuadratureSpec<T> {
    pub fn new(rel_tol: T, abs_tol: T) -> Self {
        QuadratureSpec { rel_tol, abs_tol, max_subdivisions: 4000, max_evaluations: 2_000_000 }
    }

    pub fn default_1d() -> Self {
        Self::new(T::lit(1e-10), T::lit(1e-12))
    }

    pub fn default_2d() -> Self {
        QuadratureSpec {
            rel_tol: T::lit(1e-8),
            abs_tol: T::lit(1e-12),
            max_subdivisions: 4000,
            max_evaluations: 10_000_000,
        }
    }

    /// Tight tolerances for residual-order studies where the quantity of
    /// interest is many orders below the integral itself.
    pub fn precise() -> Self {
        QuadratureSpec {
            rel_tol: T::lit(1e-13),
            abs_tol: T::lit(1e-15),
            max_subdivisions: 8000,
            max_evaluations: 200_000_000,
        }
    }

    pub fn with_evaluations(mut self, n: usize) -> Self {
        self.max_evaluations = n;
        self
    }

    /// Spec used for inner integrals of an iterated integral.
    pub(crate) fn inner(&self) -> Self {
        QuadratureSpec {
            rel_tol: self.rel_tol / T::lit(10.0),
            abs_tol: self.abs_tol / T::lit(10.0),
            max_subdivisions: self.max_subdivisions,
            max_evaluations: self.max_evaluations,
        }
    }

    fn validate(&self) -> Result<()> {
        if !(self.rel_tol >= T::zero() && self.abs_tol >= T::zero())
            || (self.rel_tol == T::zero() && self.abs_tol == T::zero())
        {
            return Err(FbmhError::InvalidConfig("tolerances must be nonnegative and not both zero".into()));
        }
        if self.max_subdivisions == 0 || self.max_evaluations < 15 {
            return Err(FbmhError::InvalidConfig("work limits too small".into()));
        }
        Ok(())
    }
}

impl<T: Real> Default for QuadratureSpec<T> {
    fn default() -> Self {
        Self::default_1d()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IntegralResult<T> {
    pub value: T,
    pub abs_error_estimate: T,
    pub evaluations: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Edge<T> {
    Lower,
    Upper,
    Interior(T),
}

/// Declares that the integrand behaves like `distance^exponent` at an edge.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SingularityAnnotation<T> {
    pub edge: Edge<T>,
    pub exponent: T,
}

impl<T: Real> SingularityAnnotation<T> {
    pub fn new(edge: Edge<T>, exponent: T) -> Result<Self> {
        if !(exponent > -T::one() && exponent <= T::zero()) {
            return Err(FbmhError::domain(format!("singularity exponent {exponent} not in (-1, 0]")));
        }
        Ok(SingularityAnnotation { edge, exponent })
    }

    pub fn lower(exponent: T) -> Result<Self> {
        Self::new(Edge::Lower, exponent)
    }

    pub fn upper(exponent: T) -> Result<Self> {
        Self::new(Edge::Upper, exponent)
    }
}

/// Weight `|x - at|^exponent`; `at` must lie on or beyond the integration
/// edge it is attached to.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerWeight<T> {
    pub at: T,
    pub exponent: T,
}

impl<T: Real> PowerWeight<T> {
    pub fn new(at: T, exponent: T) -> Result<Self> {
        if !(exponent > -T::one()) || !exponent.is_finite() {
            return Err(FbmhError::domain(format!("weight exponent {exponent} must exceed -1")));
        }
        Ok(PowerWeight { at, exponent })
    }
}

/// Evaluation counter shared by nested integrations.
#[derive(Debug)]
pub(crate) struct Budget {
    used: Cell<usize>,
    limit: usize,
}

impl Budget {
    pub(crate) fn new(limit: usize) -> Self {
        Budget { used: Cell::new(0), limit }
    }

    pub(crate) fn used(&self) -> usize {
        self.used.get()
    }

    fn charge(&self, n: usize) -> bool {
        let u = self.used.get() + n;
        self.used.set(u);
        u <= self.limit
    }
}

#[derive(Debug, Clone, Copy)]
enum Map<T> {
    Identity,
    /// x = s + v^{1/q}; the factor (x-s)^{q-1} has been absorbed.
    WeightLower {
        s: T,
        q: T,
    },
    /// x = s - v^{1/q}
    WeightUpper {
        s: T,
        q: T,
    },
    /// x = s + v^{1/q}, Jacobian (1/q) v^{1/q - 1} applied to the full integrand.
    FullLower {
        s: T,
        q: T,
    },
    FullUpper {
        s: T,
        q: T,
    },
}

#[derive(Debug, Clone, Copy)]
struct Segment<T> {
    v0: T,
    v1: T,
    map: Map<T>,
    /// which weight factors are still evaluated pointwise
    lower_pointwise: bool,
    upper_pointwise: bool,
}

#[derive(Debug, Clone, Copy)]
struct Panel<T> {
    seg: usize,
    a: T,
    b: T,
    value: T,
    error: T,
    resabs: T,
    splittable: bool,
}

fn gk15<T: Real, F: FnMut(T) -> Result<T>>(f: &mut F, a: T, b: T) -> Result<(T, T, T)> {
    let half = T::lit(0.5);
    let c = (a + b) * half;
    let h = (b - a) * half;
    let fc = f(c)?;
    let mut resg = fc * T::lit(WG[3]);
    let mut resk = fc * T::lit(WGK[7]);
    let mut resabs = resk.abs();
    let mut fv1 = [T::zero(); 7];
    let mut fv2 = [T::zero(); 7];
    for j in 0..3 {
        let jtw = 2 * j + 1;
        let dx = h * T::lit(XGK[jtw]);
        let f1 = f(c - dx)?;
        let f2 = f(c + dx)?;
        fv1[jtw] = f1;
        fv2[jtw] = f2;
        resg += T::lit(WG[j]) * (f1 + f2);
        resk += T::lit(WGK[jtw]) * (f1 + f2);
        resabs += T::lit(WGK[jtw]) * (f1.abs() + f2.abs());
    }
    for j in 0..4 {
        let jtwm1 = 2 * j;
        let dx = h * T::lit(XGK[jtwm1]);
        let f1 = f(c - dx)?;
        let f2 = f(c + dx)?;
        fv1[jtwm1] = f1;
        fv2[jtwm1] = f2;
        resk += T::lit(WGK[jtwm1]) * (f1 + f2);
        resabs += T::lit(WGK[jtwm1]) * (f1.abs() + f2.abs());
    }
    let reskh = resk * half;
    let mut resasc = T::lit(WGK[7]) * (fc - reskh).abs();
    for j in 0..7 {
        resasc += T::lit(WGK[j]) * ((fv1[j] - reskh).abs() + (fv2[j] - reskh).abs());
    }
    let result = resk * h;
    let resabs = resabs * h.abs();
    let resasc = resasc * h.abs();
    let mut err = ((resk - resg) * h).abs();
    if resasc != T::zero() && err != T::zero() {
        let r = (T::lit(200.0) * err / resasc).powf(T::lit(1.5));
        err = resasc * if r < T::one() { r } else { T::one() };
    }
    let eps = T::epsilon();
    let floor = T::lit(50.0) * eps * resabs;
    if resabs > T::min_positive_value() / (T::lit(50.0) * eps) && floor > err {
        err = floor;
    }
    if !result.is_finite() || !err.is_finite() {
        return Err(FbmhError::domain(format!("integrand not finite on [{a}, {b}]")));
    }
    Ok((result, err, resabs))
}

/// Adaptive driver over a list of mapped segments. The integrand receives the
/// original variable `x` and returns the integrand including all weights
/// flagged as pointwise; the driver applies the map's Jacobian.
///
/// The integrand also receives `(x - lower.at)^{1 + lower.exponent}` when
/// `want_power` is set. On power-mapped panels that is the quadrature
/// variable itself, so it stays exact where `x - lower.at` underflows.
struct Driver<'a, T: Real> {
    segments: Vec<Segment<T>>,
    lower_w: Option<PowerWeight<T>>,
    upper_w: Option<PowerWeight<T>>,
    spec: &'a QuadratureSpec<T>,
    budget: &'a Budget,
    want_power: bool,
}

impl<'a, T: Real> Driver<'a, T> {
    fn eval_segment<G: FnMut(T, T) -> Result<T>>(&self, g: &mut G, seg: &Segment<T>, v: T) -> Result<T> {
        let one = T::one();
        let (x, jac) = match seg.map {
            Map::Identity => (v, one),
            Map::WeightLower { s, q } => (s + v.powf(one / q), one / q),
            Map::WeightUpper { s, q } => (s - v.powf(one / q), one / q),
            Map::FullLower { s, q } => {
                let x = s + v.powf(one / q);
                if x == s {
                    return Ok(T::zero());
                }
                (x, v.powf(one / q - one) / q)
            }
            Map::FullUpper { s, q } => {
                let x = s - v.powf(one / q);
                if x == s {
                    return Ok(T::zero());
                }
                (x, v.powf(one / q - one) / q)
            }
        };
        let mut w = jac;
        if seg.lower_pointwise {
            if let Some(pw) = self.lower_w {
                w *= (x - pw.at).powf(pw.exponent);
            }
        }
        if seg.upper_pointwise {
            if let Some(pw) = self.upper_w {
                w *= (pw.at - x).powf(pw.exponent);
            }
        }
        if w == T::zero() {
            return Ok(T::zero());
        }
        let power = match (self.want_power, seg.map, self.lower_w) {
            (false, _, _) | (true, _, None) => T::zero(),
            (true, Map::WeightLower { .. }, Some(_)) => v,
            (true, _, Some(pw)) => (x - pw.at).powf(T::one() + pw.exponent),
        };
        Ok(g(x, power)? * w)
    }

    fn panel<G: FnMut(T, T) -> Result<T>>(&self, g: &mut G, seg: usize, a: T, b: T) -> Result<Panel<T>> {
        if !self.budget.charge(15) {
            return Err(FbmhError::NonConvergence {
                context: "evaluation budget".into(),
                value: f64::NAN,
                error_estimate: f64::INFINITY,
                evaluations: self.budget.used(),
            });
        }
        let s = self.segments[seg];
        let mut h = |v: T| self.eval_segment(g, &s, v);
        let (value, error, resabs) = gk15(&mut h, a, b)?;
        Ok(Panel { seg, a, b, value, error, resabs, splittable: true })
    }

    fn run<G: FnMut(T, T) -> Result<T>>(&self, g: &mut G, initial_split: usize) -> Result<IntegralResult<T>> {
        let start = self.budget.used();
        let mut panels: Vec<Panel<T>> = Vec::new();
        for (i, s) in self.segments.iter().enumerate() {
            let n = initial_split.max(1);
            let step = (s.v1 - s.v0) / T::lit(n as f64);
            let mut cuts: Vec<T> =
                (0..=n).map(|k| if k == n { s.v1 } else { s.v0 + step * T::lit(k as f64) }).collect();
            cuts.extend(graded_cuts(s));
            cuts.sort_by(|a, b| a.partial_cmp(b).unwrap());
            for w in cuts.windows(2) {
                if w[1] > w[0] {
                    panels.push(self.panel(g, i, w[0], w[1])?);
                }
            }
        }
        loop {
            let total: T = panels.iter().map(|p| p.value).sum();
            let err: T = panels.iter().map(|p| p.error).sum();
            let tol = self.spec.abs_tol.max(self.spec.rel_tol * total.abs());
            if err <= tol {
                return Ok(IntegralResult {
                    value: total,
                    abs_error_estimate: err,
                    evaluations: self.budget.used() - start,
                });
            }
            let worst = panels
                .iter()
                .enumerate()
                .filter(|(_, p)| p.splittable)
                .max_by(|x, y| x.1.error.partial_cmp(&y.1.error).unwrap_or(std::cmp::Ordering::Equal))
                .map(|(i, _)| i);
            let fail = |reason: &str| FbmhError::NonConvergence {
                context: reason.to_string(),
                value: total.as_f64(),
                error_estimate: err.as_f64(),
                evaluations: self.budget.used() - start,
            };
            let Some(i) = worst else {
                // every panel is at its floating-point floor: the estimate is
                // honest and no subdivision can improve it
                let resabs: T = panels.iter().map(|p| p.resabs).sum();
                if err <= T::lit(64.0) * T::epsilon() * resabs {
                    return Ok(IntegralResult {
                        value: total,
                        abs_error_estimate: err,
                        evaluations: self.budget.used() - start,
                    });
                }
                return Err(fail("roundoff limit"));
            };
            if panels.len() >= self.spec.max_subdivisions {
                return Err(fail("subdivision limit"));
            }
            let p = panels[i];
            let m = (p.a + p.b) * T::lit(0.5);
            let at_floor = p.error <= T::lit(50.0001) * T::epsilon() * p.resabs;
            if !(p.a < m && m < p.b) || at_floor {
                panels[i].splittable = false;
                continue;
            }
            let left = self.panel(g, p.seg, p.a, m).map_err(|e| e.within("quadrature"))?;
            let right = self.panel(g, p.seg, m, p.b).map_err(|e| e.within("quadrature"))?;
            panels[i] = left;
            panels.push(right);
        }
    }
}

/// For a weight exponent near -1 the map `v = d^q` squeezes every decade of
/// the distance `d` into a sliver of width about `q·ln 10` near the top of the
/// `v` range, where a single initial panel can miss it entirely. Seed the
/// partition with the images of `d = d_max·10^{-j}`.
fn graded_cuts<T: Real>(seg: &Segment<T>) -> Vec<T> {
    let q = match seg.map {
        Map::WeightLower { q, .. }
        | Map::WeightUpper { q, .. }
        | Map::FullLower { q, .. }
        | Map::FullUpper { q, .. } => q,
        Map::Identity => return Vec::new(),
    };
    let decade = q * T::LN_10();
    if !(decade < T::lit(0.5)) || !(seg.v1 > T::zero()) {
        return Vec::new();
    }
    let levels = (T::lit(0.5) / decade).ceil().min(T::lit(12.0)).to_usize().unwrap_or(12);
    (1..=levels).map(|j| seg.v1 * (-decade * T::lit(j as f64)).exp()).filter(|&v| v > seg.v0 && v < seg.v1).collect()
}

fn segment_for<T: Real>(
    a: T,
    b: T,
    lower: Option<PowerWeight<T>>,
    upper: Option<PowerWeight<T>>,
    a_power: Option<T>,
) -> Segment<T> {
    let width = b - a;
    if let Some(pw) = lower {
        if pw.exponent != T::zero() && a - pw.at <= width {
            let q = T::one() + pw.exponent;
            return Segment {
                v0: a_power.unwrap_or_else(|| (a - pw.at).powf(q)),
                v1: (b - pw.at).powf(q),
                map: Map::WeightLower { s: pw.at, q },
                lower_pointwise: false,
                upper_pointwise: true,
            };
        }
    }
    if let Some(pw) = upper {
        if pw.exponent != T::zero() && pw.at - b <= width {
            let q = T::one() + pw.exponent;
            return Segment {
                v0: (pw.at - b).powf(q),
                v1: (pw.at - a).powf(q),
                map: Map::WeightUpper { s: pw.at, q },
                lower_pointwise: true,
                upper_pointwise: false,
            };
        }
    }
    Segment { v0: a, v1: b, map: Map::Identity, lower_pointwise: true, upper_pointwise: true }
}

fn check_interval<T: Real>(a: T, b: T) -> Result<()> {
    if !(a < b) || !a.is_finite() || !b.is_finite() {
        return Err(FbmhError::domain(format!("integration interval [{a}, {b}] must be finite with a < b")));
    }
    Ok(())
}

pub(crate) fn weighted_with_budget<T: Real, G: FnMut(T) -> Result<T>>(
    mut g: G,
    a: T,
    b: T,
    lower: Option<PowerWeight<T>>,
    upper: Option<PowerWeight<T>>,
    spec: &QuadratureSpec<T>,
    budget: &Budget,
) -> Result<IntegralResult<T>> {
    weighted_power_with_budget(|x, _| g(x), a, b, lower, upper, None, false, spec, budget)
}

/// Weighted integral whose integrand also sees `(x - lower.at)^{1+lower.exponent}`.
/// `a_power` optionally supplies that quantity at `x = a` when it is known more
/// accurately than `a` itself.
#[allow(clippy::too_many_arguments)]
pub(crate) fn weighted_power_with_budget<T: Real, G: FnMut(T, T) -> Result<T>>(
    mut g: G,
    a: T,
    b: T,
    lower: Option<PowerWeight<T>>,
    upper: Option<PowerWeight<T>>,
    a_power: Option<T>,
    want_power: bool,
    spec: &QuadratureSpec<T>,
    budget: &Budget,
) -> Result<IntegralResult<T>> {
    check_interval(a, b)?;
    if let Some(pw) = lower {
        if pw.at > a {
            return Err(FbmhError::domain("lower weight point must not exceed the lower limit"));
        }
    }
    if let Some(pw) = upper {
        if pw.at < b {
            return Err(FbmhError::domain("upper weight point must not be below the upper limit"));
        }
    }
    let lower_active = lower.filter(|w| w.exponent != T::zero());
    let upper_active = upper.filter(|w| w.exponent != T::zero());
    let segments = match (lower_active, upper_active) {
        (Some(_), Some(_)) => {
            let m = (a + b) * T::lit(0.5);
            vec![segment_for(a, m, lower, None, a_power), segment_for(m, b, None, upper, None)]
        }
        _ => vec![segment_for(a, b, lower_active, upper_active, a_power)],
    };
    let driver = Driver { segments, lower_w: lower, upper_w: upper, spec, budget, want_power };
    driver.run(&mut g, 1)
}

/// `∫_a^b g(x) · |x - lower.at|^{lower.exponent} · |upper.at - x|^{upper.exponent} dx`.
pub fn integrate_weighted<T: Real, G: Fn(T) -> T>(
    g: G,
    a: T,
    b: T,
    lower: Option<PowerWeight<T>>,
    upper: Option<PowerWeight<T>>,
    spec: &QuadratureSpec<T>,
) -> Result<IntegralResult<T>> {
    spec.validate()?;
    let budget = Budget::new(spec.max_evaluations);
    weighted_with_budget(|x| Ok(g(x)), a, b, lower, upper, spec, &budget)
}

pub(crate) fn annotated_with_budget<T: Real, F: FnMut(T) -> Result<T>>(
    mut f: F,
    a: T,
    b: T,
    singularities: &[SingularityAnnotation<T>],
    spec: &QuadratureSpec<T>,
    budget: &Budget,
) -> Result<IntegralResult<T>> {
    check_interval(a, b)?;
    let mut cuts = vec![a, b];
    let mut lower_exp = T::zero();
    let mut upper_exp = T::zero();
    let mut interior: Vec<(T, T)> = Vec::new();
    for s in singularities {
        if !(s.exponent > -T::one() && s.exponent <= T::zero()) {
            return Err(FbmhError::domain(format!("singularity exponent {} not in (-1, 0]", s.exponent)));
        }
        match s.edge {
            Edge::Lower => lower_exp = lower_exp.min(s.exponent),
            Edge::Upper => upper_exp = upper_exp.min(s.exponent),
            Edge::Interior(p) => {
                if !(p > a && p < b) {
                    return Err(FbmhError::domain(format!("interior singularity {p} not inside ({a}, {b})")));
                }
                cuts.push(p);
                interior.push((p, s.exponent));
            }
        }
    }
    cuts.sort_by(|x, y| x.partial_cmp(y).unwrap());
    cuts.dedup();
    let exp_at = |p: T, end_exp: T| -> T {
        let mut e = T::zero();
        if p == a || p == b {
            e = end_exp;
        }
        for &(q, x) in &interior {
            if q == p {
                e = e.min(x);
            }
        }
        e
    };
    let mut segments = Vec::new();
    for w in cuts.windows(2) {
        let (lo, hi) = (w[0], w[1]);
        let el = exp_at(lo, if lo == a { lower_exp } else { T::zero() });
        let eu = exp_at(hi, if hi == b { upper_exp } else { T::zero() });
        let full = |lo: T, hi: T, el: T, eu: T, out: &mut Vec<Segment<T>>| {
            if el != T::zero() {
                let q = T::one() + el;
                out.push(Segment {
                    v0: T::zero(),
                    v1: (hi - lo).powf(q),
                    map: Map::FullLower { s: lo, q },
                    lower_pointwise: false,
                    upper_pointwise: false,
                });
            } else if eu != T::zero() {
                let q = T::one() + eu;
                out.push(Segment {
                    v0: T::zero(),
                    v1: (hi - lo).powf(q),
                    map: Map::FullUpper { s: hi, q },
                    lower_pointwise: false,
                    upper_pointwise: false,
                });
            } else {
                out.push(Segment {
                    v0: lo,
                    v1: hi,
                    map: Map::Identity,
                    lower_pointwise: false,
                    upper_pointwise: false,
                });
            }
        };
        if el != T::zero() && eu != T::zero() {
            let m = (lo + hi) * T::lit(0.5);
            full(lo, m, el, T::zero(), &mut segments);
            full(m, hi, T::zero(), eu, &mut segments);
        } else {
            full(lo, hi, el, eu, &mut segments);
        }
    }
    let driver = Driver { segments, lower_w: None, upper_w: None, spec, budget, want_power: false };
    driver.run(&mut |x, _| f(x), 1)
}

/// Adaptive integral of `f` over `[a, b]`, where `f` itself carries the
/// singular behaviour declared in `singularities`.
pub fn integrate_1d<T: Real, F: Fn(T) -> T>(
    f: F,
    a: T,
    b: T,
    singularities: &[SingularityAnnotation<T>],
    spec: &QuadratureSpec<T>,
) -> Result<IntegralResult<T>> {
    spec.validate()?;
    let budget = Budget::new(spec.max_evaluations);
    annotated_with_budget(|x| Ok(f(x)), a, b, singularities, spec, &budget)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec() -> QuadratureSpec<f64> {
        QuadratureSpec::default_1d()
    }

    #[test]
    fn smooth_polynomial_is_exact() {
        let r = integrate_1d(|x: f64| x * x * x - 2.0 * x, 0.0, 2.0, &[], &spec()).unwrap();
        assert!((r.value - 0.0).abs() < 1e-13);
        assert!(r.evaluations >= 15);
    }

    #[test]
    fn inverse_sqrt_at_lower_edge() {
        let s = [SingularityAnnotation::lower(-0.5).unwrap()];
        let r = integrate_1d(|x: f64| x.powf(-0.5), 0.0, 1.0, &s, &spec()).unwrap();
        assert!((r.value - 2.0).abs() < 1e-10, "{r:?}");
    }

    #[test]
    fn arcsine_density_both_edges() {
        let s = [SingularityAnnotation::lower(-0.5).unwrap(), SingularityAnnotation::upper(-0.5).unwrap()];
        let r = integrate_1d(|x: f64| (x * (1.0 - x)).powf(-0.5), 0.0, 1.0, &s, &spec()).unwrap();
        assert!((r.value - std::f64::consts::PI).abs() < 1e-9, "{r:?}");
    }

    #[test]
    fn interior_singularity() {
        let s = [SingularityAnnotation::new(Edge::Interior(0.3), -0.5).unwrap()];
        let r = integrate_1d(|x: f64| (x - 0.3).abs().powf(-0.5), 0.0, 1.0, &s, &spec()).unwrap();
        let exact = 2.0 * (0.3f64.sqrt() + 0.7f64.sqrt());
        assert!((r.value - exact).abs() < 1e-9, "{r:?}");
    }

    #[test]
    fn weighted_strong_singularity() {
        let w = PowerWeight::new(0.0, -0.9).unwrap();
        let r = integrate_weighted(|_x: f64| 1.0, 0.0, 1.0, Some(w), None, &spec()).unwrap();
        assert!((r.value - 10.0).abs() < 1e-9, "{r:?}");
    }

    #[test]
    fn weighted_point_outside_interval() {
        let w = PowerWeight::new(0.0, -0.5).unwrap();
        let r = integrate_weighted(|_x: f64| 1.0, 1e-6, 1.0, Some(w), None, &spec()).unwrap();
        let exact = 2.0 * (1.0 - 1e-3);
        assert!((r.value - exact).abs() < 1e-10, "{r:?}");
    }

    #[test]
    fn weighted_upper_weight() {
        let w = PowerWeight::new(2.0, -0.25).unwrap();
        let r = integrate_weighted(|_x: f64| 1.0, 0.0, 2.0, None, Some(w), &spec()).unwrap();
        let exact = 2.0f64.powf(0.75) / 0.75;
        assert!((r.value - exact).abs() < 1e-10, "{r:?}");
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let mut s = spec();
        s.max_evaluations = 45;
        let e = integrate_1d(|x: f64| (50.0 * x).sin().abs(), 0.0, 10.0, &[], &s).unwrap_err();
        assert!(matches!(e, FbmhError::NonConvergence { .. }));
    }

    #[test]
    fn non_finite_integrand_is_an_error() {
        assert!(integrate_1d(|x: f64| 1.0 / (x - 0.5), 0.0, 1.0, &[], &spec()).is_err());
    }

    #[test]
    fn invalid_inputs() {
        assert!(integrate_1d(|x: f64| x, 1.0, 0.0, &[], &spec()).is_err());
        assert!(SingularityAnnotation::lower(-1.0f64).is_err());
        assert!(SingularityAnnotation::lower(0.5f64).is_err());
        let s = [SingularityAnnotation::new(Edge::Interior(2.0), -0.5).unwrap()];
        assert!(integrate_1d(|x: f64| x, 0.0, 1.0, &s, &spec()).is_err());
    }

    #[test]
    fn works_in_single_precision() {
        let s = QuadratureSpec::<f32>::new(1e-5, 1e-6);
        let r = integrate_1d(|x: f32| x.exp(), 0.0, 1.0, &[], &s).unwrap();
        assert!((r.value - (std::f32::consts::E - 1.0)).abs() < 1e-5);
    }
}
