//! Iterated adaptive integration over the planar regions used by the norm
//! reductions. Every region is reduced to pieces on which the outer variable
//! is `x` and the inner limits are smooth functions of `x`; regions that
//! straddle the diagonal are split along `x = z` and integrated as a
//! triangle plus its mirror image.

use std::cell::Cell;

use crate::error::{FbmhError, Result};
use crate::numerics::quadrature::{
    weighted_power_with_budget, Budget, Edge, IntegralResult, PowerWeight, QuadratureSpec, SingularityAnnotation,
};
use crate::real::Real;

/// Integration regions. `t` is the side of the square `[0, t]²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Domain2d<T> {
    Rectangle {
        x0: T,
        x1: T,
        z0: T,
        z1: T,
    },
    /// `[0, t]²`
    Square {
        t: T,
    },
    /// `0 ≤ x ≤ z ≤ t`
    Triangle {
        t: T,
    },
    /// `[0, t]² ∩ {x + z ≥ t}`
    BandAbove {
        t: T,
    },
    /// `[0, t]² ∩ {x + z ≤ t}`
    BandBelow {
        t: T,
    },
    /// `x ≤ z, x + z ≤ t`
    TriangleBelow {
        t: T,
    },
    /// `x ≤ z ≤ t, x + z ≥ t`
    TriangleAbove {
        t: T,
    },
}

/// Exponents of the factors `x^{x}` and `z^{z}` multiplying the integrand.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AxisWeights<T> {
    pub x: T,
    pub z: T,
}

impl<T: Real> AxisWeights<T> {
    pub fn none() -> Self {
        AxisWeights { x: T::zero(), z: T::zero() }
    }

    pub fn both(e: T) -> Self {
        AxisWeights { x: e, z: e }
    }

    fn swapped(self) -> Self {
        AxisWeights { x: self.z, z: self.x }
    }
}

struct Piece<T> {
    x0: T,
    x1: T,
    lo: fn(T, T) -> T,
    hi: fn(T, T) -> T,
    // for rectangles the inner limits are constants carried here
    z0: T,
    z1: T,
    /// the inner lower limit is `x` itself
    diagonal: bool,
}

fn pieces<T: Real>(d: Domain2d<T>) -> Vec<Piece<T>> {
    let half = T::lit(0.5);
    let zero = T::zero();
    match d {
        Domain2d::Rectangle { x0, x1, z0, z1 } => {
            vec![Piece { x0, x1, lo: |_, c| c, hi: |_, c| c, z0, z1, diagonal: false }]
        }
        Domain2d::Triangle { t } => {
            vec![Piece { x0: zero, x1: t, lo: |x, _| x, hi: |_, t| t, z0: t, z1: t, diagonal: true }]
        }
        Domain2d::TriangleBelow { t } => {
            vec![Piece { x0: zero, x1: t * half, lo: |x, _| x, hi: |x, t| t - x, z0: t, z1: t, diagonal: true }]
        }
        Domain2d::TriangleAbove { t } => vec![
            Piece { x0: zero, x1: t * half, lo: |x, t| t - x, hi: |_, t| t, z0: t, z1: t, diagonal: false },
            Piece { x0: t * half, x1: t, lo: |x, _| x, hi: |_, t| t, z0: t, z1: t, diagonal: true },
        ],
        _ => unreachable!("composite domains are expanded before this point"),
    }
}

fn weight_at_zero<T: Real>(e: T, lower_limit: T) -> Result<Option<PowerWeight<T>>> {
    if e == T::zero() {
        return Ok(None);
    }
    if lower_limit < T::zero() {
        return Err(FbmhError::domain("axis weights require nonnegative coordinates"));
    }
    Ok(Some(PowerWeight::new(T::zero(), e)?))
}

fn primitive<T: Real, G: Fn(T, T) -> T>(
    g: &G,
    d: Domain2d<T>,
    w: AxisWeights<T>,
    spec: &QuadratureSpec<T>,
    budget: &Budget,
) -> Result<IntegralResult<T>> {
    let ps = pieces(d);
    let n = T::lit(ps.len() as f64);
    let mut value = T::zero();
    let mut err = T::zero();
    let start = budget.used();
    let inner_spec = spec.inner();
    for p in ps {
        if !(p.x1 > p.x0) {
            continue;
        }
        let worst_inner = Cell::new(T::zero());
        // With both axes weighted near exponent -1, `x` can underflow while
        // `x^{1+w.x}` (the outer quadrature variable) and hence `x^{1+w.z}`
        // are still well inside range; the inner integral depends on the latter.
        let track = p.diagonal && w.x != T::zero() && w.z != T::zero();
        let (qx, qz) = (T::one() + w.x, T::one() + w.z);
        let outer = |x: T, px: T| -> Result<T> {
            let a = (p.lo)(x, p.z0);
            let b = (p.hi)(x, p.z1);
            if !(b > a) {
                return Ok(T::zero());
            }
            let a_power = if track { Some(if qx == qz { px } else { px.powf(qz / qx) }) } else { None };
            let r = weighted_power_with_budget(
                |z, _| Ok(g(x, z)),
                a,
                b,
                weight_at_zero(w.z, a)?,
                None,
                a_power,
                false,
                &inner_spec,
                budget,
            )
            .map_err(|e| e.within("inner"))?;
            let scale = r.value.abs().max(inner_spec.abs_tol);
            let rel = r.abs_error_estimate / scale;
            if rel > worst_inner.get() {
                worst_inner.set(rel);
            }
            Ok(r.value)
        };
        let piece_spec = QuadratureSpec { abs_tol: spec.abs_tol / n, ..*spec };
        let r = weighted_power_with_budget(
            outer,
            p.x0,
            p.x1,
            weight_at_zero(w.x, p.x0)?,
            None,
            None,
            track,
            &piece_spec,
            budget,
        )
        .map_err(|e| e.within("outer"))?;
        value += r.value;
        err += r.abs_error_estimate + worst_inner.get() * r.value.abs();
    }
    Ok(IntegralResult { value, abs_error_estimate: err, evaluations: budget.used() - start })
}

fn check_domain<T: Real>(d: &Domain2d<T>) -> Result<()> {
    let ok = match *d {
        Domain2d::Rectangle { x0, x1, z0, z1 } => x0 < x1 && z0 < z1,
        Domain2d::Square { t }
        | Domain2d::Triangle { t }
        | Domain2d::BandAbove { t }
        | Domain2d::BandBelow { t }
        | Domain2d::TriangleBelow { t }
        | Domain2d::TriangleAbove { t } => t > T::zero() && t.is_finite(),
    };
    if ok {
        Ok(())
    } else {
        Err(FbmhError::domain(format!("empty integration domain {d:?}")))
    }
}

pub(crate) fn weighted_2d_with_budget<T: Real, G: Fn(T, T) -> T>(
    g: &G,
    d: Domain2d<T>,
    w: AxisWeights<T>,
    spec: &QuadratureSpec<T>,
    budget: &Budget,
) -> Result<IntegralResult<T>> {
    check_domain(&d)?;
    let mirrored = |inner: Domain2d<T>| -> Result<IntegralResult<T>> {
        let half = QuadratureSpec { abs_tol: spec.abs_tol * T::lit(0.5), ..*spec };
        let a = primitive(g, inner, w, &half, budget)?;
        let gt = |x: T, z: T| g(z, x);
        let b = primitive(&gt, inner, w.swapped(), &half, budget)?;
        Ok(IntegralResult {
            value: a.value + b.value,
            abs_error_estimate: a.abs_error_estimate + b.abs_error_estimate,
            evaluations: a.evaluations + b.evaluations,
        })
    };
    match d {
        Domain2d::Square { t } => mirrored(Domain2d::Triangle { t }),
        Domain2d::BandAbove { t } => mirrored(Domain2d::TriangleAbove { t }),
        Domain2d::BandBelow { t } => mirrored(Domain2d::TriangleBelow { t }),
        _ => primitive(g, d, w, spec, budget),
    }
}

/// `∫∫_D g(x, z) · x^{w.x} · z^{w.z} dx dz`.
pub fn integrate_2d_weighted<T: Real, G: Fn(T, T) -> T>(
    g: G,
    d: Domain2d<T>,
    w: AxisWeights<T>,
    spec: &QuadratureSpec<T>,
) -> Result<IntegralResult<T>> {
    let budget = Budget::new(spec.max_evaluations);
    weighted_2d_with_budget(&g, d, w, spec, &budget)
}

/// Per-axis singularity declarations for [`integrate_2d`]; only the edges
/// `x = 0` and `z = 0` may be singular.
#[derive(Debug, Clone, Default)]
pub struct AxisSingularities<T> {
    pub x: Vec<SingularityAnnotation<T>>,
    pub z: Vec<SingularityAnnotation<T>>,
}

fn axis_exponent<T: Real>(s: &[SingularityAnnotation<T>]) -> Result<T> {
    let mut e = T::zero();
    for a in s {
        match a.edge {
            Edge::Lower => e = e.min(a.exponent),
            _ => return Err(FbmhError::domain("2D singularities are supported on the x = 0 and z = 0 edges only")),
        }
    }
    Ok(e)
}

/// `∫∫_D f(x, z) dx dz` where `f` already contains the declared edge
/// singularities.
pub fn integrate_2d<T: Real, F: Fn(T, T) -> T>(
    f: F,
    d: Domain2d<T>,
    singularities: &AxisSingularities<T>,
    spec: &QuadratureSpec<T>,
) -> Result<IntegralResult<T>> {
    let w = AxisWeights { x: axis_exponent(&singularities.x)?, z: axis_exponent(&singularities.z)? };
    let g = |x: T, z: T| {
        if (w.x != T::zero() && x <= T::zero()) || (w.z != T::zero() && z <= T::zero()) {
            return T::zero();
        }
        let mut v = f(x, z);
        if w.x != T::zero() {
            v *= x.powf(-w.x);
        }
        if w.z != T::zero() {
            v *= z.powf(-w.z);
        }
        v
    };
    integrate_2d_weighted(g, d, w, spec)
}
