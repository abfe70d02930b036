use deszeta::numcore::{Float, Rational};
use deszeta::numeval::psi_eval;
use deszeta::renorm::{phi_eval_sum, CharacterSpec};
use deszeta::series::{expand_g, TruncatedLaurent};
use deszeta::wordalg::{
    closed_shuffle_depth11, closed_shuffle_depth21, reduced_coproduct, shuffle0, shuffle0_words, word_normalize,
    word_to_index, Shuffler, Word, WordSum,
};
use deszeta::{Error, PrecisionCtx};
use proptest::prelude::*;

fn w(s: &str) -> Word {
    s.parse().unwrap()
}

fn ws(s: &str) -> WordSum {
    WordSum::single(w(s))
}

fn rel_close(a: &Float, b: &Float, tol: f64) -> bool {
    let d = Float::with_val(a.prec(), a - b).abs().to_f64();
    d <= tol * b.to_f64().abs().max(1e-30)
}

#[test]
fn normalization() {
    assert_eq!(word_normalize("j d y").unwrap(), ws("[0]"));
    assert!(word_normalize("y j").unwrap().is_empty());
    assert_eq!(word_normalize("d d y j y").unwrap(), ws("[-2,1]"));
}

#[test]
fn small_products() {
    assert_eq!(shuffle0_words(&w("[0]"), &w("[0]")).unwrap().to_string(), "[0,0]");
    assert_eq!(shuffle0_words(&w("[1]"), &w("[1]")).unwrap().to_string(), "2*[1,1]");
    assert_eq!(
        shuffle0_words(&w("[-1]"), &w("[1]")).unwrap().to_string(),
        "[-1,1] - [0,0]"
    );
}

#[test]
fn y_powers_have_unit_coefficient() {
    for a in 1..4 {
        for b in 1..4 {
            let p = shuffle0_words(&Word::new(vec![0; a]), &Word::new(vec![0; b])).unwrap();
            assert_eq!(p, ws(&format!("[{}]", vec!["0"; a + b].join(","))));
        }
    }
}

#[test]
fn closed_forms_small_instances() {
    assert_eq!(closed_shuffle_depth11(1, 1).to_string(), "[-1,1] - [0,0]");
    assert_eq!(closed_shuffle_depth11(1, 2), ws("[-1,2]").sub(&ws("[0,1]")));
    let c = closed_shuffle_depth21(1, 1, 1);
    assert!(c.terms().all(|(x, _)| x.depth() == 3));
    assert_eq!(c.coeff(&w("[-1,1,1]")), 2);
}

#[test]
fn closed_forms_match_recursion() {
    let ctx = PrecisionCtx::new(128);
    let ts = [0.3, 0.6].map(|t| Float::with_val(128, t));
    let check = |rec: &WordSum, closed: &WordSum, label: String| {
        if rec == closed {
            return;
        }
        for t in &ts {
            let a = psi_eval(rec, t, &ctx).unwrap().value;
            let b = psi_eval(closed, t, &ctx).unwrap().value;
            assert!(rel_close(&a, &b, 1e-9), "{label}: {rec} vs {closed}");
        }
    };
    for k in 1..=3u32 {
        for l in 1..=3u32 {
            let u = Word::new(vec![-(k as i64)]);
            let v = Word::new(vec![l as i64]);
            check(
                &shuffle0_words(&u, &v).unwrap(),
                &closed_shuffle_depth11(k, l),
                format!("({k},{l})"),
            );
            for m in 1..=3u32 {
                let u = Word::new(vec![-(k as i64), l as i64]);
                let v = Word::new(vec![m as i64]);
                let rec = shuffle0_words(&u, &v).unwrap();
                check(&rec, &closed_shuffle_depth21(k, l, m), format!("({k},{l},{m})"));
            }
        }
    }
}

#[test]
fn coproduct_examples() {
    assert!(reduced_coproduct(&w("[-2]")).unwrap().is_empty());
    let yy = reduced_coproduct(&w("[0,0]")).unwrap();
    assert_eq!(yy.len(), 1);
    assert_eq!(yy.coeff(&w("[0]"), &w("[0]")), 2);
    let dyy = reduced_coproduct(&w("[-1,0]")).unwrap();
    assert_eq!(dyy.coeff(&w("[0]"), &w("[-1]")), 2);
    assert_eq!(dyy.coeff(&w("[-1]"), &w("[0]")), 2);
    assert!(matches!(reduced_coproduct(&w("[1,0]")), Err(Error::NotDWord)));
}

#[test]
fn coproduct_identity_through_characters() {
    // (2^dep - 2) w = shuffle0(coproduct(w)), compared after applying phi
    let mut f = expand_g(8).with_pole_cap(16);
    f = f.add(&TruncatedLaurent::monomial(Rational::from(1), -1, 8));
    let spec = CharacterSpec::new(f);
    let mut words = Vec::new();
    for a in 0..3u32 {
        for b in 0..3u32 {
            words.push(Word::from_d_exps(&[a, b]));
            for c in 0..2u32 {
                words.push(Word::from_d_exps(&[a, b, c]));
            }
        }
    }
    for x in words {
        let lhs = WordSum::term(x.clone(), Rational::from((1i64 << x.depth()) - 2));
        let rhs = reduced_coproduct(&x).unwrap().shuffle().unwrap();
        let l = phi_eval_sum(&lhs, &spec).unwrap();
        let r = phi_eval_sum(&rhs, &spec).unwrap();
        assert!(l.agrees_with(&r), "{x}: {l} vs {r}");
    }
}

#[test]
fn index_orientation() {
    assert_eq!(word_to_index(&w("[0]")).unwrap().as_slice(), &[0]);
    assert_eq!(word_to_index(&w("[2,1]")).unwrap().as_slice(), &[1, 2]);
    assert_eq!(word_to_index(&w("[-1,1]")).unwrap().as_slice(), &[1, -1]);
    assert!(word_to_index(&w("[1;2]")).is_err());
}

#[test]
fn fuel_is_enforced() {
    let mut s = Shuffler::with_fuel(3);
    assert!(matches!(
        s.product(&w("[-3,2]"), &w("[3,-2]")),
        Err(Error::FuelExhausted(_))
    ));
}

fn word() -> impl Strategy<Value = Word> {
    prop::collection::vec(-3i64..=3, 1..=2).prop_map(Word::new)
}

proptest! {
    #[test]
    fn literal_round_trip(x in word()) {
        prop_assert_eq!(x.to_string().parse::<Word>().unwrap(), x);
    }

    #[test]
    fn unit_is_neutral(x in word()) {
        prop_assert_eq!(shuffle0_words(&x, &Word::unit()).unwrap(), WordSum::single(x.clone()));
        prop_assert_eq!(shuffle0_words(&Word::unit(), &x).unwrap(), WordSum::single(x));
    }

    #[test]
    fn product_is_bilinear(a in word(), b in word(), c in word()) {
        let sum = ws(&a.to_string()).add(&ws(&b.to_string()));
        let lhs = shuffle0(&sum, &ws(&c.to_string())).unwrap();
        let rhs = shuffle0_words(&a, &c).unwrap().add(&shuffle0_words(&b, &c).unwrap());
        prop_assert_eq!(lhs, rhs);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]
    #[test]
    fn psi_is_multiplicative(u in word(), v in word()) {
        let ctx = PrecisionCtx::new(128);
        let t = Float::with_val(128, 0.3);
        let p = shuffle0_words(&u, &v).unwrap();
        let lhs = psi_eval(&p, &t, &ctx).unwrap().value;
        let a = psi_eval(&WordSum::single(u.clone()), &t, &ctx).unwrap().value;
        let b = psi_eval(&WordSum::single(v.clone()), &t, &ctx).unwrap().value;
        let rhs = Float::with_val(128, &a * &b);
        prop_assert!(rel_close(&lhs, &rhs, 1e-9), "{} x {}: {} vs {}", u, v, lhs.to_f64(), rhs.to_f64());
    }
}
