use anyhow::{anyhow, bail, Result};
use rayon::prelude::*;
use serde_json::{json, Value};

use fbmh_core::expansions::{
    asymptote_params, decay_check, decay_exponent, lemma_expansion, lemma_oracle, max_over_median, sigma_consts,
    theorem_expansion, LemmaId,
};
use fbmh_core::fousim::{default_r_max, mc_wt_variance, rho_sq_integral, McConfig};
use fbmh_core::ftnorm::norm_ft_sq;
use fbmh_core::verify::{CriterionReport, Verifier, DECAY_GRID};
use fbmh_core::{FbmhError, Hurst, QuadSpec};

use crate::report::{Cell, Report};
use crate::settings::Settings;

fn hurst(s: &Settings) -> Result<Hurst> {
    let h = s.h.ok_or_else(|| FbmhError::InvalidConfig("--H is required".into()))?;
    Ok(Hurst::new(h)?)
}

fn grid(s: &Settings, default: Option<&[f64]>) -> Result<Vec<f64>> {
    let g = match (&s.t, default) {
        (Some(g), _) => g.clone(),
        (None, Some(d)) => d.to_vec(),
        (None, None) => return Err(FbmhError::InvalidConfig("--T is required".into()).into()),
    };
    if g.is_empty() || g.windows(2).any(|w| w[0].partial_cmp(&w[1]) != Some(std::cmp::Ordering::Less)) {
        bail!(FbmhError::InvalidConfig("T grid must be nonempty and strictly increasing".into()));
    }
    if let Some(t) = g.iter().find(|t| !(**t > 0.0 && t.is_finite())) {
        bail!(FbmhError::InvalidConfig(format!("horizon {t} must be positive and finite")));
    }
    Ok(g)
}

fn single_t(s: &Settings, default: f64) -> Result<f64> {
    let g = grid(s, Some(&[default]))?;
    if g.len() != 1 {
        bail!(FbmhError::InvalidConfig("this command takes a single --T".into()));
    }
    Ok(g[0])
}

pub fn quad_spec(s: &Settings, fallback: QuadSpec) -> Result<QuadSpec> {
    match s.tol {
        None => Ok(fallback),
        Some(tol) if tol > 0.0 && tol < 1.0 => Ok(QuadSpec::new(tol, tol * 1e-3)),
        Some(tol) => Err(FbmhError::InvalidConfig(format!("--tol must lie in (0, 1), got {tol}")).into()),
    }
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("plain data serializes")
}

/// One object for a single horizon, otherwise a `rows` array.
fn rows_json(h: f64, mut rows: Vec<Value>) -> Value {
    if rows.len() == 1 {
        let mut v = rows.pop().unwrap();
        v.as_object_mut().unwrap().insert("H".into(), json!(h));
        v
    } else {
        json!({ "H": h, "rows": rows })
    }
}

pub fn norm(s: &Settings) -> Result<Report> {
    let hp = hurst(s)?;
    let ts = grid(s, None)?;
    let spec = quad_spec(s, QuadSpec::default_2d())?;
    let comps = ts.par_iter().map(|&t| norm_ft_sq(t, &hp, &spec)).collect::<fbmh_core::Result<Vec<_>>>()?;
    let mut json_rows = Vec::new();
    let mut rows = Vec::new();
    for (&t, c) in ts.iter().zip(&comps) {
        let mut v = to_value(c);
        let m = v.as_object_mut().unwrap();
        m.insert("T".into(), json!(t));
        m.insert("norm_over_2T".into(), json!(c.total / (2.0 * t)));
        json_rows.push(v);
        rows.push(vec![
            Cell::Num(t),
            Cell::Text(c.branch.as_str().to_string()),
            Cell::Num(c.total),
            Cell::Num(c.total / (2.0 * t)),
        ]);
    }
    Ok(Report { json: rows_json(hp.h(), json_rows), header: vec!["T", "branch", "total", "norm_over_2T"], rows })
}

pub fn constants(s: &Settings) -> Result<Report> {
    let hp = hurst(s)?;
    let c = sigma_consts(&hp)?;
    let mut json = to_value(&c);
    json.as_object_mut().unwrap().insert("H".into(), json!(hp.h()));
    Ok(Report {
        json,
        header: vec!["H", "a", "sigmaH2", "sigma2"],
        rows: vec![vec![Cell::Num(hp.h()), Cell::Num(c.a), Cell::Num(c.sigma_h2), Cell::Num(c.sigma2)]],
    })
}

pub fn expand(s: &Settings) -> Result<Report> {
    let hp = hurst(s)?;
    let ts = grid(s, None)?;
    let mut json_rows = Vec::new();
    let mut rows = Vec::new();
    for &t in &ts {
        let e = theorem_expansion(t, &hp)?;
        let mut v = to_value(&e);
        v.as_object_mut().unwrap().insert("T".into(), json!(t));
        json_rows.push(v);
        rows.push(vec![Cell::Num(t), Cell::Num(e.value), Cell::Num(e.remainder_exponent)]);
    }
    Ok(Report { json: rows_json(hp.h(), json_rows), header: vec!["T", "value", "remainder_exponent"], rows })
}

pub fn decay(s: &Settings) -> Result<Report> {
    let hp = hurst(s)?;
    let ts = grid(s, Some(&DECAY_GRID))?;
    let spec = quad_spec(s, QuadSpec::default_2d())?;
    let sigma2 = sigma_consts(&hp)?.sigma2;
    // one horizon per task; decay_check itself walks the grid in order
    let rows = ts
        .par_iter()
        .map(|&t| decay_check(&hp, &[t], &spec).map(|mut r| r.remove(0)))
        .collect::<fbmh_core::Result<Vec<_>>>()?;
    let scaled: Vec<f64> = rows.iter().map(|r| r.scaled_residual).collect();
    let ratio = (scaled.len() > 1).then(|| max_over_median(&scaled));
    let json = json!({
        "H": hp.h(),
        "sigma2": sigma2,
        "exponent": decay_exponent(&hp),
        "rows": to_value(&rows),
        "max_over_median": ratio,
    });
    let cells = rows
        .iter()
        .map(|r| vec![Cell::Num(r.t), Cell::Num(r.norm_over_2t), Cell::Num(r.residual), Cell::Num(r.scaled_residual)])
        .collect();
    Ok(Report { json, header: vec!["T", "norm_over_2T", "residual", "scaled_residual"], rows: cells })
}

pub fn asymptote(s: &Settings) -> Result<Report> {
    let hp = hurst(s)?;
    let p = asymptote_params(&hp)?;
    let ts = match &s.t {
        Some(_) => grid(s, None)?,
        None => Vec::new(),
    };
    let spec = quad_spec(s, QuadSpec::default_2d())?;
    let norms = ts.par_iter().map(|&t| Ok(norm_ft_sq(t, &hp, &spec)?.total)).collect::<Result<Vec<f64>>>()?;
    let mut json_rows = Vec::new();
    let mut rows = Vec::new();
    for (&t, &n) in ts.iter().zip(&norms) {
        let line = p.slope * t + p.intercept;
        json_rows.push(json!({ "T": t, "half_norm": n / 2.0, "asymptote": line, "gap": n / 2.0 - line }));
        rows.push(vec![Cell::Num(t), Cell::Num(n / 2.0), Cell::Num(line), Cell::Num(n / 2.0 - line)]);
    }
    let json = json!({ "H": hp.h(), "slope": p.slope, "intercept": p.intercept, "rows": json_rows });
    Ok(Report { json, header: vec!["T", "half_norm", "asymptote", "gap"], rows })
}

pub fn lemma(s: &Settings) -> Result<Report> {
    let name = s.lemma.as_deref().ok_or_else(|| FbmhError::InvalidConfig("--lemma is required".into()))?;
    let id: LemmaId = name.parse()?;
    let param = match id {
        LemmaId::A4 | LemmaId::L2_34 => 0.0,
        _ if id.takes_hurst() => s.h.ok_or_else(|| FbmhError::InvalidConfig(format!("{id} needs --H")))?,
        _ => s.beta.ok_or_else(|| FbmhError::InvalidConfig(format!("{id} needs --beta")))?,
    };
    let ts = grid(s, Some(&DECAY_GRID))?;
    let spec = quad_spec(s, QuadSpec::precise())?;
    let computed = ts
        .par_iter()
        .map(|&t| {
            let e = lemma_expansion(id, t, param)?;
            let o = lemma_oracle(id, t, param, &spec)?;
            Ok((t, o, e.value, e.remainder_exponent))
        })
        .collect::<fbmh_core::Result<Vec<_>>>()?;
    let mut json_rows = Vec::new();
    let mut rows = Vec::new();
    let mut scaled = Vec::new();
    for &(t, o, e, p) in &computed {
        let r = o - e;
        let sc = r * t.powf(-p);
        scaled.push(sc);
        json_rows.push(json!({ "T": t, "oracle": o, "expansion": e, "residual": r, "scaled_residual": sc }));
        rows.push(vec![Cell::Num(t), Cell::Num(o), Cell::Num(e), Cell::Num(r), Cell::Num(sc)]);
    }
    let ratio = (scaled.len() > 1).then(|| max_over_median(&scaled));
    let json = json!({
        "lemma": id.as_str(),
        "param": param,
        "remainder_exponent": computed[0].3,
        "rows": json_rows,
        "max_over_median": ratio,
    });
    Ok(Report { json, header: vec!["T", "oracle", "expansion", "residual", "scaled_residual"], rows })
}

pub fn mc_wt(s: &Settings) -> Result<Report> {
    let hp = hurst(s)?;
    let t = single_t(s, 50.0)?;
    let cfg = McConfig::new(hp, t, s.steps, s.paths, s.seed)?;
    let est = mc_wt_variance(&cfg)?;
    let sigma2 = sigma_consts(&hp).ok().map(|c| c.sigma2);
    let z = sigma2.map(|v| (est.mean - v) / est.std_error);
    let json = json!({
        "H": hp.h(),
        "T": t,
        "n_steps": s.steps,
        "n_paths": est.n_paths,
        "seed": s.seed,
        "mean": est.mean,
        "std_error": est.std_error,
        "sigma2": sigma2,
        "z_score": z,
    });
    let opt = |v: Option<f64>| v.map(Cell::Num).unwrap_or(Cell::Text(String::new()));
    let rows = vec![vec![
        Cell::Num(hp.h()),
        Cell::Num(t),
        Cell::Int(s.steps as u64),
        Cell::Int(est.n_paths as u64),
        Cell::Int(s.seed),
        Cell::Num(est.mean),
        Cell::Num(est.std_error),
        opt(sigma2),
        opt(z),
    ]];
    Ok(Report {
        json,
        header: vec!["H", "T", "n_steps", "n_paths", "seed", "mean", "std_error", "sigma2", "z_score"],
        rows,
    })
}

pub fn rho_integral(s: &Settings, r_max: Option<f64>) -> Result<Report> {
    let hp = hurst(s)?;
    let r_max = r_max.unwrap_or_else(|| default_r_max(&hp));
    let spec = quad_spec(s, QuadSpec::new(1e-7, 1e-10))?;
    let r = rho_sq_integral(&hp, r_max, &spec)?;
    let target = sigma_consts(&hp).ok().map(|c| c.sigma2 / 4.0);
    let gap = target.map(|g| (r.value - g).abs() / g);
    if r.tail_warning {
        eprintln!("warning: tail beyond r_max = {r_max} is estimated at {:.3e}; raise --r-max", r.tail_estimate);
    }
    let mut json = to_value(&r);
    let m = json.as_object_mut().unwrap();
    m.insert("H".into(), json!(hp.h()));
    m.insert("sigma2_over_4".into(), json!(target));
    m.insert("rel_gap".into(), json!(gap));
    let opt = |v: Option<f64>| v.map(Cell::Num).unwrap_or(Cell::Text(String::new()));
    let rows = vec![vec![
        Cell::Num(hp.h()),
        Cell::Num(r.r_max),
        Cell::Num(r.value),
        Cell::Num(r.abs_error_estimate),
        Cell::Num(r.tail_estimate),
        Cell::Text(r.tail_warning.to_string()),
        opt(target),
        opt(gap),
    ]];
    Ok(Report {
        json,
        header: vec![
            "H",
            "r_max",
            "value",
            "abs_error_estimate",
            "tail_estimate",
            "tail_warning",
            "sigma2_over_4",
            "rel_gap",
        ],
        rows,
    })
}

pub fn verify_all(s: &Settings) -> Result<(Report, Vec<CriterionReport>)> {
    let spec = quad_spec(s, QuadSpec::precise())?;
    let verifier = Verifier::new(spec);
    let reports = verifier.run_all();
    let rows = reports
        .iter()
        .map(|r| {
            vec![
                Cell::Int(r.id as u64),
                Cell::Text(r.name.to_string()),
                Cell::Text(if r.passed { "PASS" } else { "FAIL" }.into()),
                Cell::Num(r.seconds),
                Cell::Text(r.detail.clone()),
            ]
        })
        .collect();
    let passed = reports.iter().filter(|r| r.passed).count();
    let json = json!({ "passed": passed, "total": reports.len(), "criteria": to_value(&reports) });
    Ok((Report { json, header: vec!["id", "name", "status", "seconds", "detail"], rows }, reports))
}

pub fn threads_from_env() -> Result<()> {
    let Ok(v) = std::env::var("FBMH_THREADS") else {
        return Ok(());
    };
    let n: usize = v.trim().parse().ok().filter(|&n| n > 0).ok_or_else(|| {
        anyhow!(FbmhError::InvalidConfig(format!("FBMH_THREADS must be a positive integer, got {v:?}")))
    })?;
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| anyhow!("thread pool: {e}"))
}
