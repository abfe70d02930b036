use deszeta::numcore::{bernoulli, factorial, Rational};
use deszeta::series::{expand_g, mv_substitute_sum, MultiPoly, MultiSeries, TruncatedLaurent};
use deszeta::Error;
use proptest::prelude::*;

const ORDER: i32 = 6;

fn laurent() -> impl Strategy<Value = TruncatedLaurent> {
    prop::collection::vec((-3i32..=ORDER, -20i64..20, 1i64..5), 0..6).prop_map(|ts| {
        TruncatedLaurent::from_coeffs(ts.into_iter().map(|(e, n, d)| (e, Rational::from((n, d)))), ORDER)
    })
}

fn power_series() -> impl Strategy<Value = TruncatedLaurent> {
    prop::collection::vec((0i32..=ORDER, -20i64..20), 0..6)
        .prop_map(|ts| TruncatedLaurent::from_coeffs(ts.into_iter().map(|(e, n)| (e, Rational::from(n))), ORDER))
}

#[test]
fn g_matches_bernoulli_oracle() {
    // g = -d/dz (z e^z/(e^z-1)) and z e^z/(e^z-1) = sum (-1)^n B_n z^n/n! with B_1 = -1/2,
    // so g_n = (-1)^n B_{n+1}/n!
    let g = expand_g(12);
    for n in 0..=12u32 {
        let mut c = bernoulli(n + 1) / factorial(n);
        if n % 2 == 1 {
            c = -c;
        }
        assert_eq!(g.coeff(n as i32), c, "g_{n}");
    }
    assert_eq!(g.coeff(0), Rational::from((-1, 2)));
    assert_eq!(g.coeff(1), Rational::from((-1, 6)));
}

#[test]
fn coefficients_beyond_order_are_rejected() {
    let a = TruncatedLaurent::monomial(Rational::from(1), 0, 3);
    assert!(matches!(a.coeff_checked(4), Err(Error::InsufficientOrder { .. })));
    assert_eq!(a.coeff_checked(2).unwrap(), 0);
}

#[test]
fn pole_times_series_loses_order() {
    let p = TruncatedLaurent::monomial(Rational::from(1), -2, 5);
    let s = TruncatedLaurent::monomial(Rational::from(1), 0, 5);
    assert_eq!(p.mul(&s).unwrap().order(), 3);
}

#[test]
fn substitution_of_sum() {
    // f(z) = z^2 at z = x0 + x1
    let f = TruncatedLaurent::monomial(Rational::from(1), 2, 4);
    let m = mv_substitute_sum(&f, &[0, 1], 2, 4).unwrap();
    assert_eq!(m.coeff(&[1, 1]), 2);
    assert_eq!(m.coeff(&[2, 0]), 1);
    let mut one = MultiSeries::one(2, 4);
    one.add_term(vec![0, 1], Rational::from(1));
    assert_eq!(one.mul(&one).coeff(&[0, 2]), 1);
}

#[test]
fn multipoly_calculus() {
    let names = vec!["u".to_string(), "v".to_string()];
    let mut p = MultiPoly::monomial(names.clone(), vec![2, 1], Rational::from(3));
    p.add_term(vec![0, 0], Rational::from(-1));
    assert_eq!(
        p.diff(0).to_string(),
        MultiPoly::monomial(names, vec![1, 1], Rational::from(6)).to_string()
    );
    assert_eq!(p.sub(&p).len(), 0);
}

proptest! {
    #[test]
    fn addition_commutes(a in laurent(), b in laurent()) {
        prop_assert_eq!(a.add(&b), b.add(&a));
    }

    #[test]
    fn multiplication_commutes(a in laurent(), b in laurent()) {
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
    }

    #[test]
    fn multiplication_associates(a in power_series(), b in power_series(), c in power_series()) {
        let l = a.mul(&b).unwrap().mul(&c).unwrap();
        let r = a.mul(&b.mul(&c).unwrap()).unwrap();
        prop_assert_eq!(l, r);
    }

    #[test]
    fn distributes(a in laurent(), b in power_series(), c in power_series()) {
        let l = a.mul(&b.add(&c)).unwrap();
        let r = a.mul(&b).unwrap().add(&a.mul(&c).unwrap());
        prop_assert!(l.agrees_with(&r));
    }

    #[test]
    fn leibniz(a in laurent(), b in laurent()) {
        let l = a.mul(&b).unwrap().dz().unwrap();
        let r = a.dz().unwrap().mul(&b).unwrap().add(&a.mul(&b.dz().unwrap()).unwrap());
        prop_assert!(l.agrees_with(&r));
    }

    #[test]
    fn parts_recombine(a in laurent()) {
        prop_assert_eq!(a.pole_part().add(&a.regular_part()), a.clone());
        prop_assert!(a.pole_part().terms().all(|(e, _)| e < 0));
    }
}
