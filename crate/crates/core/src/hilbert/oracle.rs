//! Brute-force discretisation of the Hilbert space: functions are replaced
//! by step functions on a uniform grid and contracted against the exact
//! covariance of the fBm increments.

use nalgebra::{DMatrix, DVector};

use crate::hilbert::hurst::HurstParam;

/// `M_{ik} = E[ΔB_i ΔB_k]` on the uniform grid of `n` cells over `[0, t_end]`.
pub fn increment_covariance(hurst: &HurstParam<f64>, t_end: f64, n: usize) -> DMatrix<f64> {
    let two_h = 2.0 * hurst.h();
    let step = t_end / n as f64;
    let scale = step.powf(two_h);
    let p = |d: f64| if d == 0.0 { 0.0 } else { d.abs().powf(two_h) };
    let row: Vec<f64> = (0..n)
        .map(|d| {
            let d = d as f64;
            0.5 * (p(d + 1.0) + p(d - 1.0) - 2.0 * p(d)) * scale
        })
        .collect();
    DMatrix::from_fn(n, n, |i, k| row[i.abs_diff(k)])
}

fn midpoints(t_end: f64, n: usize) -> impl Iterator<Item = f64> + Clone {
    let step = t_end / n as f64;
    (0..n).map(move |i| (i as f64 + 0.5) * step)
}

/// `⟨f, g⟩` approximated with midpoint step functions.
pub fn discrete_inner_oracle<F: Fn(f64) -> f64, G: Fn(f64) -> f64>(
    f: F,
    g: G,
    hurst: &HurstParam<f64>,
    t_end: f64,
    n: usize,
) -> f64 {
    let m = increment_covariance(hurst, t_end, n);
    let fv = DVector::from_iterator(n, midpoints(t_end, n).map(f));
    let gv = DVector::from_iterator(n, midpoints(t_end, n).map(g));
    fv.dot(&(m * gv))
}

/// `‖f2‖²` in the tensor-square space, `Σ_{jl} (Fᵀ M F)_{jl} M_{jl}` with `F`
/// the midpoint samples of `f2`. Cost `O(n³)`.
pub fn discrete_norm_oracle_2d<F: Fn(f64, f64) -> f64>(f2: F, hurst: &HurstParam<f64>, t_end: f64, n: usize) -> f64 {
    assert!(n >= 8, "grid too coarse");
    let m = increment_covariance(hurst, t_end, n);
    let mid: Vec<f64> = midpoints(t_end, n).collect();
    let f = DMatrix::from_fn(n, n, |i, j| f2(mid[i], mid[j]));
    let mf = &m * &f;
    let ftmf = f.transpose() * mf;
    // column-major order, fixed summation sequence
    ftmf.iter().zip(m.iter()).map(|(a, b)| a * b).sum()
}
