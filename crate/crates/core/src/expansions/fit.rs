/// Least-squares slope of `log y` against `log x`.
pub fn loglog_slope(x: &[f64], y: &[f64]) -> f64 {
    assert_eq!(x.len(), y.len());
    assert!(x.len() >= 2, "need at least two points");
    let lx: Vec<f64> = x.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = y.iter().map(|v| v.abs().ln()).collect();
    let n = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxy: f64 = lx.iter().zip(&ly).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = lx.iter().map(|a| (a - mx) * (a - mx)).sum();
    sxy / sxx
}

/// `max / median` of the absolute values; the boundedness proxy.
pub fn max_over_median(v: &[f64]) -> f64 {
    assert!(!v.is_empty());
    let mut a: Vec<f64> = v.iter().map(|x| x.abs()).collect();
    a.sort_by(|x, y| x.partial_cmp(y).unwrap());
    let n = a.len();
    let median = if n % 2 == 1 { a[n / 2] } else { 0.5 * (a[n / 2 - 1] + a[n / 2]) };
    a[n - 1] / median
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_power_law() {
        let x = [25.0, 50.0, 100.0, 200.0];
        let y: Vec<f64> = x.iter().map(|t: &f64| 3.0 * t.powf(-2.8)).collect();
        assert!((loglog_slope(&x, &y) + 2.8).abs() < 1e-12);
    }

    #[test]
    fn median_even_length() {
        assert!((max_over_median(&[1.0, 2.0, 3.0, 4.0]) - 4.0 / 2.5).abs() < 1e-15);
        assert!((max_over_median(&[-2.0, 1.0, 3.0]) - 1.5).abs() < 1e-15);
    }
}
