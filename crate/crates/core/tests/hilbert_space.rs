use fbmh_core::hilbert::{
    b_t, discrete_inner_oracle, discrete_norm_oracle_2d, inner_product, ou_variance, rho1, BvFunction, FbmCovariance,
    HurstParam, Piece, Term,
};
use fbmh_core::numerics::{gamma_fn, QuadratureSpec};
use nalgebra::DMatrix;
use proptest::prelude::*;

fn spec() -> QuadratureSpec<f64> {
    QuadratureSpec::new(1e-10, 1e-13)
}

fn hp(h: f64) -> HurstParam<f64> {
    HurstParam::new(h).unwrap()
}

fn atoms_close(got: &[(f64, f64)], want: &[(f64, f64)]) -> bool {
    got.len() == want.len() && got.iter().zip(want).all(|(a, b)| (a.0 - b.0).abs() < 1e-14 && (a.1 - b.1).abs() < 1e-14)
}

#[test]
fn measure_of_constant() {
    let m = BvFunction::constant(1.0, 3.0).unwrap().measure();
    assert!(atoms_close(&m.atoms, &[(0.0, 1.0), (3.0, -1.0)]));
    assert!(!m.has_density());
}

#[test]
fn measure_of_ou_kernel() {
    let t = 2.0;
    let m = BvFunction::ou_kernel(t, 1.0, 5.0).unwrap().measure();
    assert!(atoms_close(&m.atoms, &[(0.0, (-t).exp()), (t, -1.0)]), "{:?}", m.atoms);
    for &u in &[0.0, 0.7, 1.9] {
        let d: f64 = m.density.iter().filter(|p| p.start <= u && u < p.end).map(|p| p.eval(u)).sum();
        assert!((d - (u - t).exp()).abs() < 1e-14);
    }
    let after: f64 = m.density.iter().filter(|p| p.start >= t).map(|p| p.eval(3.0)).sum();
    assert_eq!(after, 0.0);
}

#[test]
fn measure_of_identity() {
    let m = BvFunction::polynomial(vec![0.0, 1.0], 4.0).unwrap().measure();
    assert!(atoms_close(&m.atoms, &[(4.0, -4.0)]), "{:?}", m.atoms);
    assert!((m.density[0].eval(1.3) - 1.0).abs() < 1e-15);
}

#[test]
fn pieces_must_tile() {
    let p = |a: f64, b: f64| Piece { start: a, end: b, terms: vec![Term::Poly(vec![1.0])] };
    assert!(BvFunction::from_pieces(2.0, vec![p(0.0, 1.0), p(1.5, 2.0)]).is_err());
    assert!(BvFunction::from_pieces(2.0, vec![p(0.0, 1.0), p(1.0, 2.0)]).is_ok());
    assert!(BvFunction::indicator(1.0, 0.5, 2.0).is_err());
}

#[test]
fn indicator_norms_and_covariance() {
    for &h in &[0.2, 0.4, 0.5, 0.65, 0.8] {
        let one = BvFunction::indicator(0.0, 2.0, 2.0).unwrap();
        let v = inner_product(&one, &one, &hp(h), &spec()).unwrap();
        assert!((v - 2f64.powf(2.0 * h)).abs() < 1e-9, "H={h}");
    }
    let f = BvFunction::indicator(0.0, 1.0, 2.0).unwrap();
    let g = BvFunction::indicator(0.0, 2.0, 2.0).unwrap();
    let v = inner_product(&f, &g, &hp(0.3), &spec()).unwrap();
    assert!((v - 0.757_858_3).abs() < 1e-7);
}

#[test]
fn brownian_ou_kernel() {
    let f = BvFunction::ou_kernel(10.0, 1.0, 10.0).unwrap();
    let v = inner_product(&f, &f, &hp(0.5), &spec()).unwrap();
    assert!((v - 0.5).abs() < 1e-8);
}

fn random_bv(seed: &[f64; 6], t: f64) -> BvFunction<f64> {
    let cut = t * (0.2 + 0.6 * seed[0].abs().fract());
    BvFunction::from_pieces(
        t,
        vec![
            Piece { start: 0.0, end: cut, terms: vec![Term::Poly(vec![seed[1], seed[2]])] },
            Piece {
                start: cut,
                end: t,
                terms: vec![Term::Poly(vec![seed[3]]), Term::Exp { coef: seed[4], rate: seed[5], origin: cut }],
            },
        ],
    )
    .unwrap()
}

fn bv_strategy() -> impl Strategy<Value = [f64; 6]> {
    prop::array::uniform6(-1.5f64..1.5)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn bilinear(a in bv_strategy(), b in bv_strategy(), c in bv_strategy(), alpha in -2.0f64..2.0, h in 0.15f64..0.85) {
        let t = 2.0;
        let (f1, f2, g) = (random_bv(&a, t), random_bv(&b, t), random_bv(&c, t));
        let hp = hp(h);
        let combo = f1.linear_combination(alpha, &f2, 1.0).unwrap();
        let lhs = inner_product(&combo, &g, &hp, &spec()).unwrap();
        let rhs = alpha * inner_product(&f1, &g, &hp, &spec()).unwrap() + inner_product(&f2, &g, &hp, &spec()).unwrap();
        prop_assert!((lhs - rhs).abs() < 1e-7 * (1.0 + lhs.abs()), "{} vs {}", lhs, rhs);
    }

    #[test]
    fn symmetric(a in bv_strategy(), b in bv_strategy(), h in 0.15f64..0.85) {
        let (f, g) = (random_bv(&a, 3.0), random_bv(&b, 3.0));
        let fg = inner_product(&f, &g, &hp(h), &spec()).unwrap();
        let gf = inner_product(&g, &f, &hp(h), &spec()).unwrap();
        prop_assert!((fg - gf).abs() < 1e-7 * (1.0 + fg.abs()), "{} vs {}", fg, gf);
    }

    #[test]
    fn indicator_consistency(p in prop::array::uniform4(0.0f64..4.0), h in 0.1f64..0.9) {
        let t = 4.0;
        let (a, b) = (p[0].min(p[1]), p[0].max(p[1]));
        let (c, d) = (p[2].min(p[3]), p[2].max(p[3]));
        prop_assume!(b - a > 1e-3 && d - c > 1e-3);
        let hp = hp(h);
        let r = FbmCovariance::new(hp);
        let want = r.eval(b, d) - r.eval(b, c) - r.eval(a, d) + r.eval(a, c);
        let got = inner_product(
            &BvFunction::indicator(a, b, t).unwrap(),
            &BvFunction::indicator(c, d, t).unwrap(),
            &hp,
            &spec(),
        )
        .unwrap();
        prop_assert!((got - want).abs() < 1e-8, "{} vs {}", got, want);
    }
}

#[test]
fn gram_matrix_is_psd() {
    let times = [0.13, 0.5, 0.77, 1.2, 1.9, 2.4, 2.45, 3.0];
    for &h in &[0.2, 0.45, 0.7] {
        let fs: Vec<_> = times.iter().map(|&t| BvFunction::indicator(0.0, t, 3.0).unwrap()).collect();
        let g = DMatrix::from_fn(fs.len(), fs.len(), |i, j| inner_product(&fs[i], &fs[j], &hp(h), &spec()).unwrap());
        let min = g.symmetric_eigen().eigenvalues.min();
        assert!(min > -1e-8, "H={h}: {min}");
    }
}

#[test]
fn discrete_oracle_exact_on_grid_indicators() {
    let (t, n) = (2.0, 64);
    let hp = hp(0.35);
    let r = FbmCovariance::new(hp);
    let (a, b) = (0.5, 1.25);
    let v = discrete_inner_oracle(|x| if x < a { 1.0 } else { 0.0 }, |x| if x < b { 1.0 } else { 0.0 }, &hp, t, n);
    assert!((v - r.eval(a, b)).abs() < 1e-13);
    let one = discrete_norm_oracle_2d(|_, _| 1.0, &hp, 1.0, 32);
    assert!((one - 1.0).abs() < 1e-13);
}

#[test]
fn discrete_oracle_brownian_kernel() {
    let v = discrete_norm_oracle_2d(|x, y| (-(x - y).abs()).exp(), &hp(0.5), 2.0, 512);
    let exact = 2.0 - (1.0 - (-4f64).exp()) / 2.0;
    assert!(((v - exact) / exact).abs() < 0.02);
}

#[test]
fn rho1_values() {
    for &t in &[0.5, 3.0] {
        let v = rho1(t, t, &hp(0.5), &spec()).unwrap();
        assert!((v - (1.0 - (-2.0 * t).exp()) / 2.0).abs() < 1e-9);
    }
    let a = 0.3 * gamma_fn(0.6).unwrap();
    let v = rho1(50.0, 50.0, &hp(0.3), &spec()).unwrap();
    assert!((v - a).abs() < 0.02);
    for &(t, s) in &[(1.3, 2.9), (0.4, 7.0), (5.5, 2.2)] {
        for &h in &[0.3, 0.7] {
            let x = rho1(t, s, &hp(h), &spec()).unwrap();
            let y = rho1(s, t, &hp(h), &spec()).unwrap();
            assert!((x - y).abs() < 1e-8 * x.abs().max(1e-3), "H={h} ({t},{s})");
        }
    }
}

#[test]
fn variance_formula_matches_inner_product() {
    for &h in &[0.25, 0.6, 0.8] {
        for &t in &[0.7, 4.0] {
            let a = ou_variance(t, &hp(h), &spec()).unwrap();
            let b = rho1(t, t, &hp(h), &spec()).unwrap();
            assert!((a - b).abs() < 1e-8, "H={h} t={t}: {a} vs {b}");
        }
    }
}

#[test]
fn b_t_values() {
    let v = b_t(10.0, &hp(0.5), &QuadratureSpec::default_2d()).unwrap();
    assert!((v - (0.5 - (1.0 - (-20f64).exp()) / 40.0)).abs() < 1e-8);
    let tiny = b_t(1e-6, &hp(0.3), &QuadratureSpec::default_2d()).unwrap();
    assert!(tiny.abs() < 1e-3);
    assert!(b_t(0.0, &hp(0.3), &QuadratureSpec::default_2d()).is_err());
}
