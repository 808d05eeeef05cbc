use fbmh_core::expansions::{sigma_consts, theorem_expansion};
use fbmh_core::ftnorm::{
    brownian_closed_form, i3, j1, j1_literal, norm_ft_sq, norm_ft_sq_bruteforce, norm_over_2t, NormComponents, Parts,
};
use fbmh_core::hilbert::{kernel_potential, BvFunction, HurstParam, Piece, Term};
use fbmh_core::numerics::QuadratureSpec;

fn hp(h: f64) -> HurstParam<f64> {
    HurstParam::new(h).unwrap()
}

fn norm(t: f64, h: f64) -> NormComponents<f64> {
    norm_ft_sq(t, &hp(h), &QuadratureSpec::default_2d()).unwrap()
}

#[test]
fn brownian_total() {
    let n = norm(10.0, 0.5);
    assert!((n.total - 9.5).abs() < 1e-8);
    assert!(matches!(n.parts, Parts::Brownian { .. }));
}

#[test]
fn engine_matches_bruteforce() {
    for &(h, t, tol) in &[(0.6, 2.0, 0.02), (0.7, 2.0, 0.02), (0.25, 1.0, 0.03), (0.3, 1.0, 0.03)] {
        let v = norm(t, h).total;
        let o = norm_ft_sq_bruteforce(t, &hp(h), 1024);
        assert!(((v - o) / o).abs() < tol, "H={h} T={t}: {v} vs {o}");
    }
}

#[test]
fn bruteforce_brownian_and_refinement() {
    let o = norm_ft_sq_bruteforce(2.0, &hp(0.5), 1024);
    assert!((o - 1.509).abs() < 0.02 * 1.509);
    for &h in &[0.3, 0.6] {
        let v = norm(2.0, h).total;
        let e512 = (norm_ft_sq_bruteforce(2.0, &hp(h), 512) - v).abs();
        let e1024 = (norm_ft_sq_bruteforce(2.0, &hp(h), 1024) - v).abs();
        assert!(e1024 < e512, "H={h}: {e512} -> {e1024}");
    }
}

#[test]
fn long_horizon_ratio() {
    let sp = QuadratureSpec::precise();
    let v = norm_over_2t(200.0, &hp(0.3), &sp).unwrap();
    assert!((v - 0.1691).abs() < 0.002, "{v}");
    // At H = 0.6 the T^{4H-3} correction is still about 1.5% at T = 200;
    // the truncated expansion accounts for it.
    let v = norm_over_2t(200.0, &hp(0.6), &sp).unwrap();
    let s2 = sigma_consts(&hp(0.6)).unwrap().sigma2;
    assert!((v - s2).abs() < 0.015 * s2, "{v}");
    let e = theorem_expansion(200.0, &hp(0.6)).unwrap().value / 400.0;
    assert!((v - e).abs() < 1e-4, "{v} vs {e}");
}

#[test]
fn brownian_ratio_approaches_half_from_below() {
    let mut prev = 0.0;
    for &t in &[1.0, 5.0, 25.0, 125.0] {
        let v = norm_over_2t(t, &hp(0.5), &QuadratureSpec::default_2d()).unwrap();
        assert!((0.5 - v - (1.0 - (-2.0 * t).exp()) / (4.0 * t)).abs() < 1e-14);
        assert!(v > prev && v < 0.5);
        prev = v;
    }
}

#[test]
fn continuous_across_brownian_branch() {
    let c = brownian_closed_form(5.0);
    for &h in &[0.499, 0.501] {
        let v = norm(5.0, h).total;
        assert!((v - c).abs() <= 0.02 * c, "H={h}: {v} vs {c}");
    }
}

#[test]
fn positive_and_increasing() {
    for &h in &[0.1, 0.25, 0.4, 0.55, 0.7, 0.75, 0.9] {
        let mut prev = 0.0;
        for &t in &[0.25, 1.0, 3.0, 8.0] {
            let v = norm(t, h).total;
            assert!(v > prev, "H={h} T={t}: {v} after {prev}");
            prev = v;
        }
    }
}

#[test]
fn reduced_and_literal_j1_agree() {
    let sp = QuadratureSpec::new(1e-11, 1e-14);
    for &beta in &[-0.7, -0.4, -0.1, 0.2] {
        for &t in &[0.5f64, 1.0, 2.0] {
            let a = j1(t, beta, &sp).unwrap();
            let b = j1_literal(t, beta, &sp).unwrap();
            assert!((a - b).abs() < 1e-8 * a.abs().max(1e-3), "beta={beta} T={t}: {a} vs {b}");
        }
    }
}

/// `I₃` as a sum over the four endpoint atoms of the kernel potentials of
/// `e^{-|· - b|}` evaluated at `a`, for `a, b ∈ {0, T}`.
#[test]
fn i3_from_endpoint_potentials() {
    let sp = QuadratureSpec::new(1e-11, 1e-14);
    for &h in &[0.2, 0.35] {
        let hurst = hp(h);
        let t = 3.0;
        let exp_from = |b: f64| {
            let rate = if b == 0.0 { -1.0 } else { 1.0 };
            BvFunction::from_pieces(
                t,
                vec![Piece { start: 0.0, end: t, terms: vec![Term::Exp { coef: 1.0, rate, origin: b }] }],
            )
            .unwrap()
        };
        let k = |a: f64, b: f64| kernel_potential(&exp_from(b), a, &hurst, &sp).unwrap() / h;
        let sign = |a: f64| if a == 0.0 { 1.0 } else { -1.0 };
        let mut four = 0.0;
        for &a in &[0.0, t] {
            for &b in &[0.0, t] {
                four += sign(a) * sign(b) * k(a, b) * k(b, a);
            }
        }
        let direct = i3(t, hurst.beta_low(), &sp).unwrap();
        assert!((four - direct).abs() < 1e-8 * direct, "H={h}: {four} vs {direct}");
    }
}

#[test]
fn single_precision_norm() {
    let v = norm_ft_sq(2.0f32, &HurstParam::new(0.3f32).unwrap(), &QuadratureSpec::new(1e-4f32, 1e-6)).unwrap().total;
    let d = norm(2.0, 0.3).total;
    assert!(((v as f64 - d) / d).abs() < 1e-3, "{v} vs {d}");
}

#[test]
fn components_serialize() {
    let n = norm(2.0, 0.3);
    let j = serde_json::to_value(n).unwrap();
    assert_eq!(j["branch"], "lowH");
    assert!(j["I1"].is_number() && j["I2"].is_number() && j["I3"].is_number());
    let j = serde_json::to_value(norm(2.0, 0.7)).unwrap();
    assert_eq!(j["branch"], "highH");
    assert!(j["J1"].is_number() && j["J2bar"].is_number() && j["L23pair"].is_number());
}

#[test]
fn stable_just_above_brownian() {
    let loose = norm_ft_sq(5.0, &hp(0.5001), &QuadratureSpec::default_2d()).unwrap().total;
    let tight = norm_ft_sq(5.0, &hp(0.5001), &QuadratureSpec::precise()).unwrap().total;
    assert!(((loose - tight) / tight).abs() < 1e-7, "{loose} vs {tight}");
    let o = norm_ft_sq_bruteforce(5.0, &hp(0.5001), 1024);
    assert!(((tight - o) / o).abs() < 1e-4, "{tight} vs {o}");
}
