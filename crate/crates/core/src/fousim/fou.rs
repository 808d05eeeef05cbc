/// `η_{k+1} = e^{-θΔ} η_k + e^{-θΔ/2} ΔB_k`, `η_0 = 0`.
pub fn fou_path(fbm: &[f64], dt: f64, theta: f64) -> Vec<f64> {
    let decay = (-theta * dt).exp();
    let mid = (-0.5 * theta * dt).exp();
    let mut out = Vec::with_capacity(fbm.len());
    let mut eta = 0.0;
    out.push(eta);
    for w in fbm.windows(2) {
        eta = decay * eta + mid * (w[1] - w[0]);
        out.push(eta);
    }
    out
}
