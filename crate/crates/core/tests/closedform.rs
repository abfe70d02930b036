use std::time::Instant;

use deszeta::closedform::{
    coeff_a, deszeta_nonpos_bernoulli, deszeta_nonpos_iterdiff, genfun_check, gr_poly, multi_indices,
};
use deszeta::numcore::{binom, Rational};
use deszeta::IndexVector;
use proptest::prelude::*;

// Bernoulli numbers with B_1 = -1/2 from sum_{j<=n} C(n+1,j) B_j = 0
fn bern_table(n: usize) -> Vec<Rational> {
    let mut b: Vec<Rational> = vec![Rational::from(1)];
    for m in 1..=n {
        let mut acc = Rational::new();
        for (j, bj) in b.iter().enumerate() {
            acc += Rational::from(bj * binom(m as i64 + 1, j as i64));
        }
        b.push(-acc / (m as u32 + 1));
    }
    b
}

// value at (-k_1, ..., -k_r) from the trailing-argument recurrence, seeded by
// the depth-one values (1+k) zeta(-k) = (-1)^k B_{k+1}
fn recurrence_oracle(k: &[i64], b: &[Rational]) -> Rational {
    let r = k.len();
    if r == 1 {
        let v = b[(-k[0] + 1) as usize].clone();
        return if k[0] % 2 == 0 { v } else { -v };
    }
    let big = -k[r - 1];
    let mut acc = Rational::new();
    for i in 0..=big {
        let mut head = k[..r - 1].to_vec();
        head[r - 2] += i - big;
        acc += recurrence_oracle(&head, b) * recurrence_oracle(&[-i], b) * binom(big, i);
    }
    acc
}

#[test]
fn exact_table_both_routes_and_oracle() {
    let start = Instant::now();
    let b = bern_table(20);
    let mut points = 0;
    for r in 1..=3usize {
        let mut k = vec![0u32; r];
        loop {
            let a = deszeta_nonpos_bernoulli(&k);
            let c = deszeta_nonpos_iterdiff(&k).unwrap();
            let neg: Vec<i64> = k.iter().map(|&x| -(x as i64)).collect();
            assert_eq!(a, c, "routes differ at {neg:?}");
            assert_eq!(a, recurrence_oracle(&neg, &b), "oracle differs at {neg:?}");
            points += 1;
            let mut i = 0;
            while i < r && k[i] == 4 {
                k[i] = 0;
                i += 1;
            }
            if i == r {
                break;
            }
            k[i] += 1;
        }
    }
    assert_eq!(points, 5 + 25 + 125);
    assert_eq!(deszeta_nonpos_bernoulli(&[0]), Rational::from((-1, 2)));
    assert_eq!(deszeta_nonpos_bernoulli(&[1]), Rational::from((-1, 6)));
    assert_eq!(deszeta_nonpos_bernoulli(&[0, 0]), Rational::from((1, 4)));
    assert!(start.elapsed().as_secs() < 30);
}

#[test]
fn generating_function_matches() {
    for r in 1..=3 {
        let g = genfun_check(r, 6).unwrap();
        assert!(g.ok, "depth {r}: {:?}", g.first_discrepancy);
        assert_eq!(g.compared, multi_indices(r, 6).len());
    }
}

#[test]
fn tables_and_polynomials() {
    assert_eq!(gr_poly(1).len(), 2);
    let t2 = coeff_a(2, 0).unwrap();
    // depth-two grouping at generic (s1, s2) = (5, 7): (s1-1)(s2-1), s2(s2+1-s1), -s2(s2+1)
    let g = t2.pochhammer_coeffs(&[5, 7]);
    assert_eq!(g[&vec![0, 0]], 24);
    assert_eq!(g[&vec![-1, 1]], 7 * 3);
    assert_eq!(g[&vec![-2, 2]], -56);
    assert_eq!(t2.max_last_l(), 2);
    assert!(coeff_a(1, 2).unwrap().entries.is_empty());
}

#[test]
fn index_vector_helpers() {
    let k: IndexVector = "(1,-1)".parse().unwrap();
    assert_eq!(k.to_string(), "(1,-1)");
    assert_eq!(k.prime().as_slice(), &[1, -2]);
    assert_eq!(k.shift_last(2).as_slice(), &[1, -3]);
    assert_eq!(
        "[0,-2]".parse::<IndexVector>().unwrap().negated_nonpositive(),
        Some(vec![0, 2])
    );
    assert!("".parse::<IndexVector>().is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]
    #[test]
    fn routes_agree_depth_four(k in prop::collection::vec(0u32..3, 4)) {
        prop_assert_eq!(deszeta_nonpos_bernoulli(&k), deszeta_nonpos_iterdiff(&k).unwrap());
    }
}
