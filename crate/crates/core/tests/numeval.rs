use deszeta::licomb::zfull;
use deszeta::numcore::{binom, Float, Rational};
use deszeta::numeval::{
    desli_quadrature_oracle, deszeta_eval, deszeta_trailing_reduction, li_eval, licomb_eval, mzv_eval, mzv_eval_real,
    pole_limit_check, route_a, route_b, zeta_int, Route, RouteAOptions, RouteChoice,
};
use deszeta::{IndexVector, PrecisionCtx};

fn iv(k: &[i64]) -> IndexVector {
    IndexVector::new(k.to_vec())
}

fn ctx() -> PrecisionCtx {
    PrecisionCtx::new(192)
}

// frozen reference values of zeta(2..6)
const ZETA: [f64; 5] = [
    1.644_934_066_848_226_4,
    1.202_056_903_159_594_3,
    1.082_323_233_711_138_2,
    1.036_927_755_143_37,
    1.017_343_061_984_449,
];

fn value(k: &[i64]) -> f64 {
    deszeta_eval(&iv(k), RouteChoice::Auto, &ctx()).unwrap().to_f64()
}

#[test]
fn depth_one_positive_values() {
    for (i, z) in ZETA.iter().enumerate() {
        let k = i as i64 + 2;
        let v = value(&[k]);
        assert!((v - (1 - k) as f64 * z).abs() <= 1e-10, "k={k}: {v}");
    }
    assert_eq!(
        deszeta_eval(&iv(&[1]), RouteChoice::B, &ctx()).unwrap().exact,
        Some(Rational::from(-1))
    );
}

#[test]
fn depth_two_one_one() {
    let v = deszeta_eval(&iv(&[1, 1]), RouteChoice::Auto, &ctx()).unwrap();
    assert_eq!(v.exact, Some(Rational::from((1, 2))));
    assert_eq!(v.route, Route::CombinationB);
}

#[test]
fn extrapolation_matches_exact_values() {
    let c = ctx();
    for (k, q) in [(vec![1i64], (-1, 1)), (vec![1, 1], (1, 2)), (vec![1, -1], (5, 12))] {
        let a = route_a(&iv(&k), &RouteAOptions::default(), &c).unwrap();
        let exact = q.0 as f64 / q.1 as f64;
        assert!((a.to_f64() - exact).abs() <= 1e-6, "{k:?}: {}", a.to_f64());
        assert!(!a.rigorous);
    }
}

#[test]
fn routes_agree_on_mixed_points() {
    let c = ctx();
    for k in [vec![2i64, 3], vec![3, 2], vec![1, 2], vec![2, 1]] {
        let b = route_b(&iv(&k), &c).unwrap().expect("finite combination");
        let a = route_a(&iv(&k), &RouteAOptions::default(), &c).unwrap();
        assert!(
            (a.to_f64() - b.to_f64()).abs() <= 1e-10,
            "{k:?}: {} vs {}",
            a.to_f64(),
            b.to_f64()
        );
    }
}

#[test]
fn fallback_to_extrapolation() {
    let c = ctx();
    let k = iv(&[3, -1]);
    assert!(route_b(&k, &c).unwrap().is_none());
    let auto = deszeta_eval(&k, RouteChoice::Auto, &c).unwrap();
    assert_eq!(auto.route, Route::ExtrapolationA);
    // value(3,-1) = value(2) value(0) + value(3) value(-1)
    let expect = -ZETA[0] * -0.5 + -2.0 * ZETA[1] * (-1.0 / 6.0);
    assert!((auto.to_f64() - expect).abs() <= 1e-10, "{}", auto.to_f64());
}

#[test]
fn depth_one_shuffle_relation() {
    for (n, m) in [(1i64, 1i64), (1, 2), (2, 2), (2, 3), (3, 3)] {
        let lhs = value(&[n]) * value(&[m]);
        let mut rhs = 0.0;
        for j in 1..n + m {
            let c = binom(j - 1, n - 1) + binom(j - 1, m - 1);
            rhs += c.to_f64() * value(&[n + m - j, j]);
        }
        assert!((lhs - rhs).abs() <= 1e-6, "({n},{m}): {lhs} vs {rhs}");
    }
}

#[test]
fn product_law_at_half() {
    let c = ctx();
    let t = Float::with_val(192, 0.5);
    let z0 = licomb_eval(&zfull(&iv(&[0])).unwrap(), &t, &c).unwrap().value;
    for a in -2..=2i64 {
        let mut ks = vec![vec![a]];
        ks.extend((-2..=2i64).map(|b| vec![a, b]));
        for k in ks {
            let mut ext = k.clone();
            ext.push(0);
            let lhs = licomb_eval(&zfull(&iv(&ext)).unwrap(), &t, &c).unwrap().value;
            let rhs = licomb_eval(&zfull(&iv(&k)).unwrap(), &t, &c).unwrap().value * &z0;
            assert!((lhs - rhs).abs().to_f64() <= 1e-10, "{k:?}");
        }
    }
}

#[test]
fn trailing_argument_recurrence() {
    let c = ctx();
    let v = deszeta_trailing_reduction(&iv(&[1, -1]), &c).unwrap();
    assert_eq!(v.exact, Some(Rational::from((5, 12))));
    let direct = value(&[3, -2]);
    let rec = deszeta_trailing_reduction(&iv(&[3, -2]), &c).unwrap().to_f64();
    assert!((direct - rec).abs() <= 1e-12);
}

#[test]
fn pole_limit() {
    let eps = Rational::from((1, 10_000));
    let v = pole_limit_check(3, &eps, &ctx()).unwrap();
    assert!(v.to_f64().abs() <= 1e-3, "{}", v.to_f64());
}

#[test]
fn closed_form_matches_quadrature() {
    let c = PrecisionCtx::new(128);
    for k in [
        vec![0i64],
        vec![1],
        vec![2],
        vec![-1],
        vec![1, 1],
        vec![2, -1],
        vec![-1, 2],
        vec![0, 1],
    ] {
        for t in [0.2, 0.5] {
            let q = desli_quadrature_oracle(&iv(&k), t).unwrap().to_f64();
            let z = licomb_eval(&zfull(&iv(&k)).unwrap(), &Float::with_val(128, t), &c)
                .unwrap()
                .to_f64();
            assert!((q - z).abs() <= 1e-7 * z.abs().max(1.0), "{k:?} at {t}: {q} vs {z}");
        }
    }
}

#[test]
fn polylog_and_mzv_values() {
    let c = ctx();
    let li2 = li_eval(&iv(&[2]), &Float::with_val(192, 0.5), &c).unwrap().to_f64();
    let ln2 = std::f64::consts::LN_2;
    let pi2 = std::f64::consts::PI.powi(2);
    assert!((li2 - (pi2 / 12.0 - ln2 * ln2 / 2.0)).abs() < 1e-15);
    // zeta(2,2) in the n_1 < n_2 convention = (zeta(2)^2 - zeta(4))/2
    let z22 = mzv_eval(&[2, 2], &c).unwrap().to_f64();
    assert!((z22 - (ZETA[0] * ZETA[0] - ZETA[2]) / 2.0).abs() < 1e-14);
    assert_eq!(zeta_int(-1, &c).unwrap().exact, Some(Rational::from((-1, 12))));
    let half = mzv_eval_real(&[Rational::from(2), Rational::from((5, 2))], &c)
        .unwrap()
        .to_f64();
    assert!(half > 0.0);
    assert!(mzv_eval(&[1], &c).is_err());
}

#[test]
fn extrapolation_reports_failure() {
    let opts = RouteAOptions {
        j_min: 3,
        j_max: 5,
        tol: 1e-20,
        min_nodes: 4,
    };
    let err = route_a(&iv(&[1, 1]), &opts, &ctx()).unwrap_err();
    assert!(matches!(err, deszeta::Error::ExtrapolationFailed(_)));
}
