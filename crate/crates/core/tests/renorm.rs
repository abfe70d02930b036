use deszeta::closedform::{deszeta_nonpos_bernoulli, multi_indices};
use deszeta::numcore::Rational;
use deszeta::renorm::{check_f_generating, f_value, renorm_recurrence_check, BirkhoffPair, CharacterSpec};
use deszeta::series::{expand_g, TruncatedLaurent};
use deszeta::wordalg::Word;

const N: u32 = 12;

fn g_spec() -> CharacterSpec {
    CharacterSpec::new(expand_g(N))
}

fn with_pole(c: i64, e: i32) -> CharacterSpec {
    let f = expand_g(N)
        .add(&TruncatedLaurent::monomial(Rational::from(c), e, N as i32))
        .with_pole_cap(32);
    CharacterSpec::new(f)
}

fn indices(max_r: usize, max_w: u32) -> Vec<Vec<u32>> {
    (1..=max_r).flat_map(|r| multi_indices(r, max_w)).collect()
}

#[test]
fn g_character_gives_exact_values() {
    let spec = g_spec();
    let mut bp = BirkhoffPair::new(&spec);
    for k in indices(3, 4) {
        assert_eq!(bp.f_value(&k).unwrap(), deszeta_nonpos_bernoulli(&k), "{k:?}");
    }
}

#[test]
fn poles_do_not_change_values() {
    let base = g_spec();
    for spec in [with_pole(1, -2), with_pole(3, -1), with_pole(-2, -3)] {
        let mut a = BirkhoffPair::new(&base);
        let mut b = BirkhoffPair::new(&spec);
        for k in indices(3, 4) {
            assert_eq!(a.f_value(&k).unwrap(), b.f_value(&k).unwrap(), "{k:?}");
        }
    }
}

#[test]
fn counterterm_is_pure_pole() {
    let spec = with_pole(1, -2);
    let mut bp = BirkhoffPair::new(&spec);
    for k in indices(3, 3) {
        let w = Word::from_d_exps(&k);
        let m = bp.minus(&w).unwrap();
        assert!(m.terms().all(|(e, _)| e < 0), "{w}: {m}");
    }
}

#[test]
fn generating_identity_order_six() {
    for spec in [g_spec(), with_pole(1, -2)] {
        for r in 1..=3 {
            let c = check_f_generating(r, &spec, 6).unwrap();
            assert!(c.ok, "depth {r}: {:?}", c.first_discrepancy);
        }
    }
}

#[test]
fn trailing_recurrence() {
    let spec = with_pole(1, -2);
    for k in indices(3, 4).into_iter().filter(|k| k.len() >= 2) {
        assert!(renorm_recurrence_check(&k, &spec).unwrap(), "{k:?}");
    }
}

#[test]
fn single_values() {
    assert_eq!(f_value(&[0], &g_spec()).unwrap(), Rational::from((-1, 2)));
    assert_eq!(f_value(&[0, 0], &with_pole(1, -2)).unwrap(), Rational::from((1, 4)));
}
