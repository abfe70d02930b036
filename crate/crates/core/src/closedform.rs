//! The generating polynomial `G_r`, its coefficient tables, and exact
//! values of the desingularized function at non-positive integers.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::numcore::{bernoulli, factorial, pochhammer, Integer, Rational};
use crate::series::{expand_g, mv_substitute_sum, MultiPoly, MultiSeries, TruncatedLaurent};

/// Integer index vector `(k_1, ..., k_r)` with `r >= 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IndexVector(Vec<i64>);

impl IndexVector {
    /// Panics on an empty vector.
    pub fn new(k: Vec<i64>) -> Self {
        assert!(!k.is_empty(), "index vector must have depth >= 1");
        IndexVector(k)
    }

    pub fn depth(&self) -> usize {
        self.0.len()
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }

    pub fn last(&self) -> i64 {
        *self.0.last().unwrap()
    }

    /// `(k_1, ..., k_{r-1}, k_r - j)`.
    pub fn shift_last(&self, j: i64) -> Self {
        let mut v = self.0.clone();
        *v.last_mut().unwrap() -= j;
        IndexVector(v)
    }

    /// `(k_1, ..., k_r - 1)`.
    pub fn prime(&self) -> Self {
        self.shift_last(1)
    }

    pub fn add(&self, m: &[i64]) -> Self {
        IndexVector(self.0.iter().zip(m).map(|(a, b)| a + b).collect())
    }

    pub fn all_nonpositive(&self) -> bool {
        self.0.iter().all(|&k| k <= 0)
    }

    /// `(-k_1, ..., -k_r)` when every entry is non-positive.
    pub fn negated_nonpositive(&self) -> Option<Vec<u32>> {
        self.all_nonpositive()
            .then(|| self.0.iter().map(|&k| (-k) as u32).collect())
    }
}

impl fmt::Display for IndexVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, k) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{k}")?;
        }
        write!(f, ")")
    }
}

impl FromStr for IndexVector {
    type Err = Error;

    /// Accepts `1,-1`, `(1,-1)` or `[1,-1]`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().trim_start_matches(['(', '[']).trim_end_matches([')', ']']);
        let v = t
            .split(',')
            .map(|x| {
                x.trim()
                    .parse::<i64>()
                    .map_err(|_| Error::Parse(format!("bad index list {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        if v.is_empty() {
            return Err(Error::Parse("empty index list".into()));
        }
        Ok(IndexVector(v))
    }
}

fn gr_names(r: usize) -> Vec<String> {
    (1..=r)
        .map(|i| format!("u{i}"))
        .chain((1..=r).map(|i| format!("v{i}")))
        .collect()
}

/// `G_r = prod_j {1 - (u_j v_j + ... + u_r v_r)(1/v_j - 1/v_{j-1})}` with `1/v_0 = 0`.
///
/// Variables are ordered `u_1..u_r, v_1..v_r`.
pub fn gr_poly(r: usize) -> MultiPoly {
    assert!(r >= 1);
    let names = gr_names(r);
    let n = 2 * r;
    let unit = |idx: &[(usize, i32)]| {
        let mut e = vec![0; n];
        for &(i, p) in idx {
            e[i] += p;
        }
        e
    };
    let one = Rational::from(1);
    let mut prod = MultiPoly::constant(names.clone(), one.clone());
    for j in 0..r {
        let mut sum = MultiPoly::zero(names.clone());
        for i in j..r {
            sum.add_term(unit(&[(i, 1), (r + i, 1)]), one.clone());
        }
        let mut diff = MultiPoly::monomial(names.clone(), unit(&[(r + j, -1)]), one.clone());
        if j > 0 {
            diff.add_term(unit(&[(r + j - 1, -1)]), Rational::from(-1));
        }
        let factor = MultiPoly::constant(names.clone(), one.clone()).sub(&sum.mul(&diff));
        prod = prod.mul(&factor);
    }
    prod
}

/// Coefficients `a_{l,m}(q)` of `(v_r^{-1} d/du_r)^q G_r`, keyed by `(l, m)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoeffTable {
    pub r: usize,
    pub q: u32,
    pub entries: BTreeMap<(Vec<u32>, Vec<i64>), Integer>,
}

impl CoeffTable {
    fn from_poly(r: usize, q: u32, p: &MultiPoly) -> Result<Self> {
        let mut entries = BTreeMap::new();
        for (e, c) in p.terms() {
            if *c.denom() != 1 || e[..r].iter().any(|&x| x < 0) {
                return Err(Error::Integrity(format!("unexpected term {c} at {e:?}")));
            }
            let l = e[..r].iter().map(|&x| x as u32).collect();
            let m = e[r..].iter().map(|&x| x as i64).collect();
            entries.insert((l, m), c.numer().clone());
        }
        Ok(CoeffTable { r, q, entries })
    }

    /// Largest power of `u_r` present.
    pub fn max_last_l(&self) -> u32 {
        self.entries.keys().map(|(l, _)| l[self.r - 1]).max().unwrap_or(0)
    }

    /// `sum_l a_{l,m} prod_j (x_j)_{l_j}` grouped by the shift `m`.
    pub fn pochhammer_coeffs(&self, x: &[i64]) -> BTreeMap<Vec<i64>, Integer> {
        let mut out: BTreeMap<Vec<i64>, Integer> = BTreeMap::new();
        for ((l, m), a) in &self.entries {
            let mut c = a.clone();
            for (xj, lj) in x.iter().zip(l) {
                c *= pochhammer(*xj, *lj);
            }
            *out.entry(m.clone()).or_default() += c;
        }
        out.retain(|_, c| *c != 0);
        out
    }
}

fn coeff_a_symbolic(r: usize, q: u32) -> Result<CoeffTable> {
    let mut p = gr_poly(r);
    let mut vinv = vec![0; 2 * r];
    vinv[2 * r - 1] = -1;
    for _ in 0..q {
        p = p.diff(r - 1).shift(&vinv);
    }
    CoeffTable::from_poly(r, q, &p)
}

/// `a_{l,m}(q) = (l_r + 1)_q a_{l + q e_r, m + q e_r}(0)`.
fn coeff_a_shortcut(base: &CoeffTable, q: u32) -> CoeffTable {
    let r = base.r;
    let mut entries = BTreeMap::new();
    for ((l, m), a) in &base.entries {
        if l[r - 1] < q {
            continue;
        }
        let mut l2 = l.clone();
        l2[r - 1] -= q;
        let mut m2 = m.clone();
        m2[r - 1] -= q as i64;
        let c = pochhammer(l2[r - 1] as i64 + 1, q) * a;
        entries.insert((l2, m2), c);
    }
    CoeffTable { r, q, entries }
}

type TableCache = Mutex<HashMap<(usize, u32), Arc<CoeffTable>>>;

fn table_cache() -> &'static TableCache {
    static CACHE: OnceLock<TableCache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Coefficient table for depth `r` and derivative order `q`.
///
/// Computed by differentiating `G_r` and independently by shifting the
/// `q = 0` table; a mismatch is reported as an integrity error.
pub fn coeff_a(r: usize, q: u32) -> Result<Arc<CoeffTable>> {
    if r == 0 {
        return Err(Error::Domain("depth must be at least 1".into()));
    }
    if let Some(t) = table_cache().lock().unwrap().get(&(r, q)) {
        return Ok(t.clone());
    }
    let sym = coeff_a_symbolic(r, q)?;
    if q > 0 {
        let base = coeff_a(r, 0)?;
        let short = coeff_a_shortcut(&base, q);
        if short != sym {
            return Err(Error::Integrity(format!(
                "coefficient tables disagree for r={r}, q={q}"
            )));
        }
    }
    let t = Arc::new(sym);
    table_cache().lock().unwrap().insert((r, q), t.clone());
    Ok(t)
}

/// Value at `(-k_1, ..., -k_r)` from the Bernoulli-number formula.
pub fn deszeta_nonpos_bernoulli(k: &[u32]) -> Rational {
    let r = k.len();
    assert!(r >= 1);
    // nu[a][b] for a <= b; column b sums to k[b], row a feeds B_{row+1}.
    fn walk(k: &[u32], b: usize, rows: &mut Vec<u32>, weight: Rational, acc: &mut Rational) {
        let r = k.len();
        if b == r {
            let mut v = weight;
            for &s in rows.iter() {
                v *= bernoulli(s + 1);
            }
            *acc += v;
            return;
        }
        let mut parts = vec![0u32; b + 1];
        split(k, b, 0, k[b], &mut parts, rows, &weight, acc);
    }
    #[allow(clippy::too_many_arguments)]
    fn split(
        k: &[u32],
        b: usize,
        a: usize,
        left: u32,
        parts: &mut Vec<u32>,
        rows: &mut Vec<u32>,
        weight: &Rational,
        acc: &mut Rational,
    ) {
        if a == b {
            parts[a] = left;
            let mut w = weight.clone() * factorial(k[b]);
            for (i, &p) in parts.iter().enumerate() {
                w /= factorial(p);
                rows[i] += p;
            }
            walk(k, b + 1, rows, w, acc);
            for (i, &p) in parts.iter().enumerate() {
                rows[i] -= p;
            }
            return;
        }
        for p in 0..=left {
            parts[a] = p;
            split(k, b, a + 1, left - p, parts, rows, weight, acc);
        }
    }
    let mut acc = Rational::new();
    let mut rows = vec![0u32; r];
    walk(k, 0, &mut rows, Rational::from(1), &mut acc);
    if k.iter().sum::<u32>() % 2 == 1 {
        acc = -acc;
    }
    acc
}

/// Value at `(-k_1, ..., -k_r)` as the constant term of
/// `d^{k_r}[g d^{k_{r-1}}[g ... d^{k_1}[g]]]`.
pub fn deszeta_nonpos_iterdiff(k: &[u32]) -> Result<Rational> {
    assert!(!k.is_empty());
    let n: u32 = k.iter().sum::<u32>() + 1;
    let g = expand_g(n);
    let mut x = g.dz_n(k[0])?;
    for &ki in &k[1..] {
        x = g.mul(&x)?.dz_n(ki)?;
    }
    x.constant_term()
}

/// Outcome of a coefficientwise comparison of two multivariate series.
#[derive(Clone, Debug, PartialEq)]
pub struct GenCheck {
    pub ok: bool,
    pub compared: usize,
    /// Exponent, left value, right value.
    pub first_discrepancy: Option<(Vec<u32>, Rational, Rational)>,
}

/// All `k in N^r` with `|k| <= n`, in lexicographic order.
pub fn multi_indices(r: usize, n: u32) -> Vec<Vec<u32>> {
    fn go(r: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for x in 0..=left {
            cur.push(x);
            go(r, left - x, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(r, n, &mut Vec::with_capacity(r), &mut out);
    out
}

pub(crate) fn compare_series(lhs: &MultiSeries, rhs: &MultiSeries, r: usize, n: u32) -> GenCheck {
    let mut compared = 0;
    for k in multi_indices(r, n) {
        let (a, b) = (lhs.coeff(&k), rhs.coeff(&k));
        compared += 1;
        if a != b {
            return GenCheck {
                ok: false,
                compared,
                first_discrepancy: Some((k, a, b)),
            };
        }
    }
    GenCheck {
        ok: true,
        compared,
        first_discrepancy: None,
    }
}

/// `h(t) = ((1-t)e^t - 1)/(e^t - 1)^2`, i.e. `g(-t)`.
pub fn expand_h(n: u32) -> TruncatedLaurent {
    let g = expand_g(n);
    TruncatedLaurent::from_coeffs(
        g.terms()
            .map(|(e, c)| (e, if e % 2 == 0 { c.clone() } else { -c.clone() })),
        g.order(),
    )
}

/// Compares `sum (-t)^k/k! value(-k)` with `prod_i h(t_i + ... + t_r)` to total degree `n`.
pub fn genfun_check(r: usize, n: u32) -> Result<GenCheck> {
    let mut lhs = MultiSeries::zero(r, n);
    for k in multi_indices(r, n) {
        let mut c = deszeta_nonpos_bernoulli(&k);
        for &ki in &k {
            c /= factorial(ki);
        }
        if k.iter().sum::<u32>() % 2 == 1 {
            c = -c;
        }
        lhs.add_term(k, c);
    }
    let h = expand_h(n);
    let mut rhs = MultiSeries::one(r, n);
    for i in 0..r {
        let vars: Vec<usize> = (i..r).collect();
        rhs = rhs.mul(&mv_substitute_sum(&h, &vars, r, n)?);
    }
    Ok(compare_series(&lhs, &rhs, r, n))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn key(l: &[u32], m: &[i64]) -> (Vec<u32>, Vec<i64>) {
        (l.to_vec(), m.to_vec())
    }

    #[test]
    fn depth_one_tables() {
        let t0 = coeff_a(1, 0).unwrap();
        assert_eq!(t0.entries.len(), 2);
        assert_eq!(t0.entries[&key(&[0], &[0])], 1);
        assert_eq!(t0.entries[&key(&[1], &[0])], -1);
        let t1 = coeff_a(1, 1).unwrap();
        assert_eq!(t1.entries.len(), 1);
        assert_eq!(t1.entries[&key(&[0], &[-1])], -1);
    }

    #[test]
    fn depth_two_grouped() {
        // (s1-1)(s2-1), s2(s2+1-s1), -s2(s2+1) at (1,1)
        let g = coeff_a(2, 0).unwrap().pochhammer_coeffs(&[1, 1]);
        assert_eq!(g.get(&vec![0, 0]), None);
        assert_eq!(g[&vec![-1, 1]], 1);
        assert_eq!(g[&vec![-2, 2]], -2);
    }

    #[test]
    fn nonpositive_small_values() {
        assert_eq!(deszeta_nonpos_bernoulli(&[0]), Rational::from((-1, 2)));
        assert_eq!(deszeta_nonpos_bernoulli(&[1]), Rational::from((-1, 6)));
        assert_eq!(deszeta_nonpos_bernoulli(&[0, 0]), Rational::from((1, 4)));
        assert_eq!(deszeta_nonpos_iterdiff(&[1]).unwrap(), Rational::from((-1, 6)));
        assert_eq!(deszeta_nonpos_iterdiff(&[0, 0]).unwrap(), Rational::from((1, 4)));
    }

    #[test]
    fn index_parse() {
        let k: IndexVector = "(1,-1)".parse().unwrap();
        assert_eq!(k.as_slice(), &[1, -1]);
        assert_eq!(k.to_string(), "(1,-1)");
        assert_eq!(k.prime().as_slice(), &[1, -2]);
        assert!("".parse::<IndexVector>().is_err());
    }
}
