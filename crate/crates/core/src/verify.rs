//! The acceptance suite: ten numerical checks, each reduced to a single
//! pass/fail with a human-readable detail line.

use std::collections::HashMap;
use std::sync::Mutex;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::expansions::{
    a_const, asymptote_params, decay_exponent, lemma_expansion, lemma_oracle, loglog_slope, max_over_median,
    sigma_consts, theorem_expansion, LemmaId,
};
use crate::fousim::{default_r_max, mc_wt_variance, rho_sq_integral, McConfig};
use crate::ftnorm::{brownian_closed_form, norm_ft_sq, norm_ft_sq_bruteforce};
use crate::hilbert::{b_t, HurstParam};
use crate::numerics::{integrate_2d_weighted, AxisWeights, Domain2d, QuadratureSpec};

pub const DECAY_GRID: [f64; 4] = [25.0, 50.0, 100.0, 200.0];
pub const MC_SEED: u64 = 20_240_601;

#[derive(Debug, Clone, Serialize)]
pub struct CriterionReport {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
}

impl CriterionReport {
    pub fn line(&self) -> String {
        format!(
            "[{}] criterion {:>2} {:<28} {:>8.2}s  {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.seconds,
            self.detail
        )
    }
}

fn hp(h: f64) -> HurstParam<f64> {
    HurstParam::new(h).expect("valid Hurst exponent")
}

/// Shared state so that norms computed for one check are reused by the next.
pub struct Verifier {
    pub spec: QuadratureSpec<f64>,
    norms: Mutex<HashMap<(u64, u64), f64>>,
}

impl Default for Verifier {
    fn default() -> Self {
        Self::new(QuadratureSpec::precise())
    }
}

impl Verifier {
    pub fn new(spec: QuadratureSpec<f64>) -> Self {
        Verifier { spec, norms: Mutex::new(HashMap::new()) }
    }

    fn norm(&self, h: f64, t: f64) -> Result<f64> {
        let key = (h.to_bits(), t.to_bits());
        if let Some(&v) = self.norms.lock().unwrap().get(&key) {
            return Ok(v);
        }
        let v = norm_ft_sq(t, &hp(h), &self.spec)?.total;
        self.norms.lock().unwrap().insert(key, v);
        Ok(v)
    }

    fn norms(&self, h: f64, grid: &[f64]) -> Result<Vec<f64>> {
        grid.par_iter().map(|&t| self.norm(h, t)).collect()
    }

    fn run(
        &self,
        id: u8,
        name: &'static str,
        limit: Duration,
        f: impl FnOnce() -> Result<(bool, String)>,
    ) -> CriterionReport {
        let start = Instant::now();
        let outcome = f();
        let elapsed = start.elapsed();
        let (mut passed, mut detail) = match outcome {
            Ok(v) => v,
            Err(e) => (false, format!("error: {e}")),
        };
        if elapsed > limit {
            passed = false;
            detail.push_str(&format!("; exceeded {:.0}s limit", limit.as_secs_f64()));
        }
        CriterionReport { id, name, passed, detail, seconds: elapsed.as_secs_f64() }
    }

    /// Brownian case against the closed form and a direct `L²` quadrature.
    pub fn brownian_exactness(&self) -> CriterionReport {
        self.run(1, "brownian exactness", Duration::from_secs(1), || {
            let mut worst: f64 = 0.0;
            for &t in &[1.0f64, 5.0, 10.0] {
                let exact = t - (1.0 - (-2.0 * t).exp()) / 2.0;
                let v = norm_ft_sq(t, &hp(0.5), &self.spec)?.total;
                let l2 = integrate_2d_weighted(
                    |x: f64, z: f64| (-2.0 * (x - z).abs()).exp(),
                    Domain2d::Square { t },
                    AxisWeights::none(),
                    &QuadratureSpec::default_2d(),
                )?
                .value;
                worst = worst.max(((v - exact) / exact).abs()).max(((l2 - exact) / exact).abs());
                worst = worst.max(((brownian_closed_form(t) - exact) / exact).abs());
            }
            Ok((worst <= 1e-8, format!("max rel err {worst:.2e} (tol 1e-8)")))
        })
    }

    /// Reduction engine against the discretised space with 1024 cells.
    pub fn oracle_equivalence(&self) -> CriterionReport {
        self.run(2, "oracle equivalence", Duration::from_secs(300), || {
            let cases: Vec<(f64, f64)> =
                [0.25, 0.3, 0.6, 0.7].iter().flat_map(|&h| [1.0, 2.0].map(|t| (h, t))).collect();
            let rels: Vec<(f64, f64, f64)> = cases
                .par_iter()
                .map(|&(h, t)| {
                    let v = self.norm(h, t)?;
                    let o = norm_ft_sq_bruteforce(t, &hp(h), 1024);
                    Ok((h, t, ((v - o) / o).abs()))
                })
                .collect::<Result<_>>()?;
            let worst = rels.iter().cloned().fold((0.0, 0.0, 0.0), |a, b| if b.2 > a.2 { b } else { a });
            Ok((
                worst.2 <= 0.03,
                format!("max rel gap {:.3}% at H={} T={} (tol 3%)", 100.0 * worst.2, worst.0, worst.1),
            ))
        })
    }

    pub fn limit_sigma2(&self) -> CriterionReport {
        self.run(3, "limit sigma^2", Duration::from_secs(120), || {
            let hs = [0.25, 0.3, 0.5, 0.6];
            let gaps: Vec<f64> = hs
                .par_iter()
                .map(|&h| {
                    let s2 = sigma_consts(&hp(h))?.sigma2;
                    Ok((self.norm(h, 200.0)? / 400.0 - s2).abs() / s2)
                })
                .collect::<Result<_>>()?;
            let desc: Vec<String> = hs.iter().zip(&gaps).map(|(h, g)| format!("H={h}: {:.2}%", 100.0 * g)).collect();
            Ok((gaps.iter().all(|&g| g <= 0.015), format!("{} (tol 1.5%)", desc.join(", "))))
        })
    }

    pub fn theorem_residual(&self) -> CriterionReport {
        self.run(4, "theorem residual order", Duration::from_secs(600), || {
            let mut ok = true;
            let mut desc = Vec::new();
            for &(h, limit) in &[(0.3, 4.0 * 0.3 - 4.0 + 0.4), (0.6, 4.0 * 0.6 - 4.0 + 0.4), (0.75, -1.6)] {
                let norms = self.norms(h, &DECAY_GRID)?;
                let res: Vec<f64> = DECAY_GRID
                    .iter()
                    .zip(&norms)
                    .map(|(&t, &n)| Ok(n - theorem_expansion(t, &hp(h))?.value))
                    .collect::<Result<_>>()?;
                let slope = loglog_slope(&DECAY_GRID, &res);
                ok &= slope <= limit;
                desc.push(format!("H={h}: slope {slope:.3} (<= {limit:.2})"));
            }
            Ok((ok, desc.join(", ")))
        })
    }

    pub fn decay_bound(&self) -> CriterionReport {
        self.run(5, "decay bound", Duration::from_secs(600), || {
            let mut ok = true;
            let mut desc = Vec::new();
            for &h in &[0.25, 0.3, 0.6] {
                let s2 = sigma_consts(&hp(h))?.sigma2;
                let p = decay_exponent(&hp(h));
                let norms = self.norms(h, &DECAY_GRID)?;
                let scaled: Vec<f64> =
                    DECAY_GRID.iter().zip(norms).map(|(&t, n)| (n / (2.0 * t) - s2).abs() * t.powf(p)).collect();
                let r = max_over_median(&scaled);
                ok &= r <= 3.0;
                desc.push(format!("H={h}: max/median {r:.3}"));
            }
            Ok((ok, format!("{} (tol 3)", desc.join(", "))))
        })
    }

    pub fn oblique_asymptote(&self) -> CriterionReport {
        self.run(6, "oblique asymptote", Duration::from_secs(600), || {
            let gap = |h: f64| -> Result<Vec<f64>> {
                let p = asymptote_params(&hp(h))?;
                let norms = self.norms(h, &DECAY_GRID)?;
                Ok(DECAY_GRID.iter().zip(norms).map(|(&t, n)| (n / 2.0 - (p.slope * t + p.intercept)).abs()).collect())
            };
            let g3 = gap(0.3)?;
            let monotone = g3.windows(2).all(|w| w[1] < w[0]);
            let slope = loglog_slope(&DECAY_GRID, &g3);
            let g5 = *gap(0.5)?.last().unwrap();
            let ok = monotone && slope <= -0.4 && g5 <= 1e-6;
            Ok((
                ok,
                format!(
                    "H=0.3: decreasing={monotone}, slope {slope:.3} (<= -0.4); H=0.5: gap at T=200 {g5:.2e} (<= 1e-6)"
                ),
            ))
        })
    }

    pub fn lemma_suite(&self) -> CriterionReport {
        self.run(7, "appendix lemma suite", Duration::from_secs(900), || {
            let mut cases: Vec<(LemmaId, f64)> = Vec::new();
            cases.extend([-0.9, -0.5, -0.1].map(|b| (LemmaId::A2, b)));
            cases.extend([-0.5, -0.2].map(|b| (LemmaId::A3, b)));
            cases.push((LemmaId::A4, 0.0));
            cases.extend([-0.7, -0.5, -0.3, 0.2].map(|b| (LemmaId::A5, b)));
            cases.extend([0.3, 0.6].map(|h| (LemmaId::L1, h)));
            cases.extend([0.6, 0.9].map(|h| (LemmaId::L2, h)));
            cases.push((LemmaId::L2_34, 0.75));
            let ratios: Vec<(LemmaId, f64, f64)> = cases
                .par_iter()
                .map(|&(id, p)| {
                    let scaled: Vec<f64> = DECAY_GRID
                        .iter()
                        .map(|&t| {
                            let e = lemma_expansion(id, t, p)?;
                            let o = lemma_oracle(id, t, p, &self.spec)?;
                            Ok((o - e.value) * t.powf(-e.remainder_exponent))
                        })
                        .collect::<Result<_>>()?;
                    Ok((id, p, max_over_median(&scaled)))
                })
                .collect::<Result<_>>()?;
            let worst = ratios.iter().cloned().fold((LemmaId::A2, 0.0, 0.0), |a, b| if b.2 > a.2 { b } else { a });
            let ok = ratios.iter().all(|r| r.2 <= 3.0);
            Ok((
                ok,
                format!("{} cases, worst max/median {:.3} ({} at {}) (tol 3)", ratios.len(), worst.2, worst.0, worst.1),
            ))
        })
    }

    pub fn monte_carlo(&self) -> CriterionReport {
        self.run(8, "monte carlo E[W_T^2]", Duration::from_secs(600), || {
            let mut ok = true;
            let mut desc = Vec::new();
            for &h in &[0.3, 0.5, 0.6] {
                let cfg = McConfig::new(hp(h), 50.0, 4096, 2000, MC_SEED)?;
                let est = mc_wt_variance(&cfg)?;
                let s2 = sigma_consts(&hp(h))?.sigma2;
                let z = (est.mean - s2) / est.std_error;
                let pass = z.abs() <= 3.0 || (h == 0.3 && (est.mean - s2).abs() <= 0.02);
                ok &= pass;
                desc.push(format!("H={h}: {:.4}±{:.4} vs {s2:.4} ({z:+.2} SE)", est.mean, est.std_error));
            }
            Ok((ok, desc.join(", ")))
        })
    }

    pub fn rho_identity(&self) -> CriterionReport {
        self.run(9, "rho^2 integral identity", Duration::from_secs(300), || {
            let hs = [0.25, 0.5, 0.6];
            let spec = QuadratureSpec::new(1e-7, 1e-10);
            let gaps: Vec<f64> = hs
                .par_iter()
                .map(|&h| {
                    let target = sigma_consts(&hp(h))?.sigma2 / 4.0;
                    let r = rho_sq_integral(&hp(h), default_r_max(&hp(h)), &spec)?;
                    Ok((r.value - target).abs() / target)
                })
                .collect::<Result<_>>()?;
            let desc: Vec<String> = hs.iter().zip(&gaps).map(|(h, g)| format!("H={h}: {:.2}%", 100.0 * g)).collect();
            Ok((gaps.iter().all(|&g| g <= 0.05), format!("{} (tol 5%)", desc.join(", "))))
        })
    }

    pub fn b_t_rate(&self) -> CriterionReport {
        self.run(10, "b_T rate", Duration::from_secs(600), || {
            let mut ok = true;
            let mut desc = Vec::new();
            for &h in &[0.3, 0.6] {
                let a = a_const(&hp(h))?;
                let gaps: Vec<f64> =
                    DECAY_GRID.par_iter().map(|&t| Ok(b_t(t, &hp(h), &self.spec)? - a)).collect::<Result<_>>()?;
                let slope = loglog_slope(&DECAY_GRID, &gaps);
                ok &= slope <= -0.6;
                desc.push(format!("H={h}: slope {slope:.3}"));
            }
            Ok((ok, format!("{} (<= -0.6)", desc.join(", "))))
        })
    }

    pub fn run_all(&self) -> Vec<CriterionReport> {
        vec![
            self.brownian_exactness(),
            self.oracle_equivalence(),
            self.limit_sigma2(),
            self.theorem_residual(),
            self.decay_bound(),
            self.oblique_asymptote(),
            self.lemma_suite(),
            self.monte_carlo(),
            self.rho_identity(),
            self.b_t_rate(),
        ]
    }
}

pub fn run_all() -> Vec<CriterionReport> {
    Verifier::default().run_all()
}
