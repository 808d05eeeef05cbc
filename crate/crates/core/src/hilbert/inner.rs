use crate::error::{FbmhError, Result};
use crate::hilbert::bv::{BvFunction, Piece};
use crate::hilbert::hurst::{Branch, HurstParam};
use crate::numerics::quadrature::{annotated_with_budget, weighted_with_budget, Budget, PowerWeight, QuadratureSpec};
use crate::real::Real;

fn potential<T: Real>(
    f: &BvFunction<T>,
    s: T,
    hurst: &HurstParam<T>,
    spec: &QuadratureSpec<T>,
    budget: &Budget,
) -> Result<T> {
    let beta = hurst.beta_low();
    let mut acc = T::zero();
    for p in f.pieces().iter().filter(|p| !p.is_zero()) {
        let g = |t: T| Ok(p.eval(t));
        if p.end > s {
            let a = p.start.max(s);
            let w = PowerWeight::new(s, beta)?;
            acc += weighted_with_budget(g, a, p.end, Some(w), None, spec, budget)?.value;
        }
        if p.start < s {
            let b = p.end.min(s);
            let w = PowerWeight::new(s, beta)?;
            acc -= weighted_with_budget(g, p.start, b, None, Some(w), spec, budget)?.value;
        }
    }
    Ok(hurst.h() * acc)
}

/// `H ∫_0^T f(t) |t - s|^{2H-1} sgn(t - s) dt`, the kernel potential of `f` at `s`.
pub fn kernel_potential<T: Real>(
    f: &BvFunction<T>,
    s: T,
    hurst: &HurstParam<T>,
    spec: &QuadratureSpec<T>,
) -> Result<T> {
    if !(s >= T::zero() && s <= f.t_end()) {
        return Err(FbmhError::domain(format!("evaluation point {s} outside [0, {}]", f.t_end())));
    }
    potential(f, s, hurst, spec, &Budget::new(spec.max_evaluations))
}

fn split_at<T: Real>(pieces: &[Piece<T>], cuts: &[T]) -> Vec<(T, T, usize)> {
    let mut out = Vec::new();
    for (i, p) in pieces.iter().enumerate() {
        let mut start = p.start;
        for &c in cuts.iter().filter(|&&c| c > p.start && c < p.end) {
            out.push((start, c, i));
            start = c;
        }
        out.push((start, p.end, i));
    }
    out
}

/// Inner product of two BV functions in the Hilbert space of fBm on `[0, T]`.
///
/// Evaluated as `Σ_atoms m · F(loc) + ∫ g'(s) F(s) ds` with `F` the kernel
/// potential of `f`. At H = 1/2 this is the plain `L²` product.
pub fn inner_product<T: Real>(
    f: &BvFunction<T>,
    g: &BvFunction<T>,
    hurst: &HurstParam<T>,
    spec: &QuadratureSpec<T>,
) -> Result<T> {
    if f.t_end() != g.t_end() {
        return Err(FbmhError::domain("inner product of functions on different intervals"));
    }
    let budget = Budget::new(spec.max_evaluations);
    let mut cuts = f.breakpoints();
    cuts.extend(g.breakpoints());
    cuts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    cuts.dedup();

    if hurst.branch() == Branch::Brownian {
        let mut acc = T::zero();
        for (a, b, _) in split_at(g.pieces(), &cuts) {
            let r = annotated_with_budget(|x| Ok(f.eval(x) * g.eval(x)), a, b, &[], spec, &budget)?;
            acc += r.value;
        }
        return Ok(acc);
    }

    let inner_spec = spec.inner();
    let nu = g.measure();
    let mut acc = T::zero();
    for &(loc, mass) in &nu.atoms {
        acc += mass * potential(f, loc, hurst, &inner_spec, &budget).map_err(|e| e.within("atom"))?;
    }
    for (a, b, i) in split_at(&nu.density, &cuts) {
        let d = &nu.density[i];
        if d.is_zero() {
            continue;
        }
        let integrand = |s: T| -> Result<T> {
            let dv = d.eval(s);
            if dv == T::zero() {
                return Ok(T::zero());
            }
            Ok(dv * potential(f, s, hurst, &inner_spec, &budget)?)
        };
        let r = annotated_with_budget(integrand, a, b, &[], spec, &budget).map_err(|e| e.within("density"))?;
        acc += r.value;
    }
    Ok(acc)
}
