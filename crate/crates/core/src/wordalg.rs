//! Words in the letters `j`, `d`, `y` with `dj = jd = 1`, the product ⧢₀,
//! the reduced coproduct on `d`/`y` words, and closed shuffle formulas.
//!
//! A word is stored as exponents `(e_0, ..., e_{r-1}; tail)` meaning
//! `j^{e_0} y j^{e_1} y ... j^{e_{r-1}} y j^{tail}`. A negative exponent is a
//! power of `d`. Words with a nonzero tail lie in the ideal generated by
//! bare `j`/`d` powers and are dropped by normalization.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use crate::closedform::IndexVector;
use crate::error::{Error, Result};
use crate::numcore::{binom, Integer, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    exps: Vec<i64>,
    tail: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Letter {
    J,
    D,
    Y,
}

impl Word {
    pub fn unit() -> Self {
        Word {
            exps: Vec::new(),
            tail: 0,
        }
    }

    /// `j^{e_0} y ... j^{e_{r-1}} y`.
    pub fn new(exps: Vec<i64>) -> Self {
        Word { exps, tail: 0 }
    }

    pub fn with_tail(exps: Vec<i64>, tail: i64) -> Self {
        Word { exps, tail }
    }

    /// `d^{k_1} y ... d^{k_r} y`.
    pub fn from_d_exps(ks: &[u32]) -> Self {
        Word::new(ks.iter().map(|&k| -(k as i64)).collect())
    }

    pub fn exps(&self) -> &[i64] {
        &self.exps
    }

    pub fn tail(&self) -> i64 {
        self.tail
    }

    pub fn depth(&self) -> usize {
        self.exps.len()
    }

    pub fn is_unit(&self) -> bool {
        self.exps.is_empty() && self.tail == 0
    }

    /// Exponents `k_i` of a word `d^{k_1} y ... d^{k_r} y`.
    pub fn d_exps(&self) -> Result<Vec<u32>> {
        if self.tail != 0 {
            return Err(Error::TailNonzero);
        }
        self.exps
            .iter()
            .map(|&e| if e > 0 { Err(Error::NotDWord) } else { Ok((-e) as u32) })
            .collect()
    }

    /// Letter form, e.g. `ddyjy`.
    pub fn to_letters(&self) -> String {
        fn run(s: &mut String, e: i64) {
            let c = if e > 0 { 'j' } else { 'd' };
            for _ in 0..e.unsigned_abs() {
                s.push(c);
            }
        }
        let mut s = String::new();
        for &e in &self.exps {
            run(&mut s, e);
            s.push('y');
        }
        run(&mut s, self.tail);
        if s.is_empty() {
            s.push('1');
        }
        s
    }

    fn head(&self) -> Option<Letter> {
        let e = match self.exps.first() {
            Some(&e) => e,
            None => self.tail,
        };
        match e {
            0 if self.exps.is_empty() => None,
            0 => Some(Letter::Y),
            e if e > 0 => Some(Letter::J),
            _ => Some(Letter::D),
        }
    }

    fn strip_head(&self) -> Word {
        let mut w = self.clone();
        let slot = if w.exps.is_empty() { &mut w.tail } else { &mut w.exps[0] };
        match (*slot).signum() {
            1 => *slot -= 1,
            -1 => *slot += 1,
            _ => {
                w.exps.remove(0);
            }
        }
        w
    }

    fn prepend(&self, l: Letter) -> Word {
        let mut w = self.clone();
        match l {
            Letter::Y => w.exps.insert(0, 0),
            Letter::J | Letter::D => {
                let step = if l == Letter::J { 1 } else { -1 };
                match w.exps.first_mut() {
                    Some(e) => *e += step,
                    None => w.tail += step,
                }
            }
        }
        w
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, e) in self.exps.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        if self.tail != 0 {
            write!(f, ";{}", self.tail)?;
        }
        write!(f, "]")
    }
}

impl FromStr for Word {
    type Err = Error;

    /// Parses `[e1,...,er]`, optionally with a tail as `[e1,...,er;t]`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("expected a word literal like [1,-2], got {s:?}"));
        let body = s
            .trim()
            .strip_prefix('[')
            .and_then(|b| b.strip_suffix(']'))
            .ok_or_else(bad)?;
        let (main, tail) = match body.split_once(';') {
            Some((m, t)) => (m, t.trim().parse::<i64>().map_err(|_| bad())?),
            None => (body, 0),
        };
        let exps = if main.trim().is_empty() {
            Vec::new()
        } else {
            main.split(',')
                .map(|x| x.trim().parse::<i64>().map_err(|_| bad()))
                .collect::<Result<Vec<_>>>()?
        };
        Ok(Word::with_tail(exps, tail))
    }
}

/// Rational linear combination of words.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WordSum {
    terms: BTreeMap<Word, Rational>,
}

impl WordSum {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn single(w: Word) -> Self {
        Self::term(w, Rational::from(1))
    }

    pub fn term(w: Word, c: Rational) -> Self {
        let mut s = Self::zero();
        s.add_term(w, c);
        s
    }

    pub fn add_term(&mut self, w: Word, c: Rational) {
        if c == 0 {
            return;
        }
        let slot = self.terms.entry(w.clone()).or_default();
        *slot += c;
        if *slot == 0 {
            self.terms.remove(&w);
        }
    }

    pub fn add_scaled(&mut self, other: &WordSum, c: &Rational) {
        for (w, x) in &other.terms {
            self.add_term(w.clone(), Rational::from(x * c));
        }
    }

    pub fn add(&self, other: &WordSum) -> WordSum {
        let mut out = self.clone();
        out.add_scaled(other, &Rational::from(1));
        out
    }

    pub fn sub(&self, other: &WordSum) -> WordSum {
        let mut out = self.clone();
        out.add_scaled(other, &Rational::from(-1));
        out
    }

    pub fn scale(&self, c: &Rational) -> WordSum {
        let mut out = WordSum::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn coeff(&self, w: &Word) -> Rational {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Drops words lying in the ideal of bare `j`/`d` powers.
    pub fn normalize(&self) -> WordSum {
        let mut out = self.clone();
        out.terms.retain(|w, _| w.tail == 0);
        out
    }

    fn prepend(&self, l: Letter) -> WordSum {
        let mut out = WordSum::zero();
        for (w, c) in &self.terms {
            out.add_term(w.prepend(l), c.clone());
        }
        out
    }
}

fn fmt_coeff_term(f: &mut fmt::Formatter<'_>, first: bool, c: &Rational, body: &str) -> fmt::Result {
    let neg = *c < 0;
    let mag = Rational::from(c.abs_ref());
    match (first, neg) {
        (true, true) => write!(f, "-")?,
        (false, true) => write!(f, " - ")?,
        (false, false) => write!(f, " + ")?,
        (true, false) => {}
    }
    if mag == 1 {
        write!(f, "{body}")
    } else {
        write!(f, "{mag}*{body}")
    }
}

impl fmt::Display for WordSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            fmt_coeff_term(f, i == 0, c, &w.to_string())?;
        }
        Ok(())
    }
}

/// Reduces a letter string such as `"ddyjy"` modulo `dj = jd = 1`.
///
/// Whitespace is ignored; a nonzero trailing exponent gives the zero sum.
pub fn word_normalize(letters: &str) -> Result<WordSum> {
    let mut exps = Vec::new();
    let mut run = 0i64;
    for ch in letters.chars().filter(|c| !c.is_whitespace()) {
        match ch {
            'j' => run += 1,
            'd' => run -= 1,
            'y' => {
                exps.push(run);
                run = 0;
            }
            _ => return Err(Error::Parse(format!("unknown letter {ch:?}"))),
        }
    }
    Ok(WordSum::single(Word::with_tail(exps, run)).normalize())
}

pub const DEFAULT_FUEL: u64 = 1_000_000;

/// Evaluator for ⧢₀ with a memo table and a step budget.
pub struct Shuffler {
    memo: HashMap<(Word, Word), WordSum>,
    steps: u64,
    fuel: u64,
}

impl Default for Shuffler {
    fn default() -> Self {
        Self::with_fuel(DEFAULT_FUEL)
    }
}

impl Shuffler {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_fuel(fuel: u64) -> Self {
        Shuffler {
            memo: HashMap::new(),
            steps: 0,
            fuel,
        }
    }

    pub fn steps(&self) -> u64 {
        self.steps
    }

    pub fn product_sums(&mut self, a: &WordSum, b: &WordSum) -> Result<WordSum> {
        let mut out = WordSum::zero();
        for (u, cu) in a.terms() {
            for (v, cv) in b.terms() {
                let p = self.product(u, v)?;
                out.add_scaled(&p, &Rational::from(cu * cv));
            }
        }
        Ok(out)
    }

    pub fn product(&mut self, u: &Word, v: &Word) -> Result<WordSum> {
        if u.tail != 0 || v.tail != 0 {
            return Ok(WordSum::zero());
        }
        let key = (u.clone(), v.clone());
        if let Some(hit) = self.memo.get(&key) {
            return Ok(hit.clone());
        }
        self.steps += 1;
        if self.steps > self.fuel {
            return Err(Error::FuelExhausted(self.fuel));
        }
        let out = self.expand(u, v)?.normalize();
        self.memo.insert(key, out.clone());
        Ok(out)
    }

    fn expand(&mut self, u: &Word, v: &Word) -> Result<WordSum> {
        use Letter::*;
        let (hu, hv) = match (u.head(), v.head()) {
            (None, _) => return Ok(WordSum::single(v.clone())),
            (_, None) => return Ok(WordSum::single(u.clone())),
            (Some(a), Some(b)) => (a, b),
        };
        let (u1, v1) = (u.strip_head(), v.strip_head());
        let neg = Rational::from(-1);
        Ok(match (hu, hv) {
            (Y, _) => self.product(&u1, v)?.prepend(Y),
            (_, Y) => self.product(u, &v1)?.prepend(Y),
            (J, J) => self.product(&u1, v)?.add(&self.product(u, &v1)?).prepend(J),
            (D, D) => {
                let mut out = self.product(&u1, v)?.prepend(D);
                out.add_scaled(&self.product(&u1, &v.prepend(D))?, &neg);
                out
            }
            (D, J) => {
                let mut out = self.product(&u1, v)?.prepend(D);
                out.add_scaled(&self.product(&u1, &v1)?, &neg);
                out
            }
            (J, D) => {
                let mut out = self.product(u, &v1)?.prepend(D);
                out.add_scaled(&self.product(&u1, &v1)?, &neg);
                out
            }
        })
    }
}

/// `u ⧢₀ v` with a fresh memo table and the default step budget.
pub fn shuffle0(u: &WordSum, v: &WordSum) -> Result<WordSum> {
    Shuffler::new().product_sums(u, v)
}

pub fn shuffle0_words(u: &Word, v: &Word) -> Result<WordSum> {
    Shuffler::new().product(u, v)
}

/// Closed form for `d^k y ⧢₀ j^l y`.
pub fn closed_shuffle_depth11(k: u32, l: u32) -> WordSum {
    let (k, l) = (k as i64, l as i64);
    let mut out = WordSum::zero();
    for i in 0..=k.min(l - 1) {
        let c = sign(i) * binom(k, i);
        out.add_term(Word::new(vec![-(k - i), l - i]), Rational::from(c));
    }
    for i in 0..=(k - l) {
        let c = sign(l) * binom(k - 1 - i, l - 1);
        out.add_term(Word::new(vec![-(k - l - i), -i]), Rational::from(c));
    }
    out
}

/// Closed form for `d^k y j^l y ⧢₀ j^m y`.
///
/// The first sum runs over `0 <= i <= min(k, l+m-2)`; its terms vanish for
/// `i >= max(l, m)`, so for `m <= l` this is the same as stopping at `l-1`.
pub fn closed_shuffle_depth21(k: u32, l: u32, m: u32) -> WordSum {
    let (k, l, m) = (k as i64, l as i64, m as i64);
    let mut out = WordSum::zero();
    for i in 0..=k.min(l + m - 2) {
        for p in 1..=(l + m - i - 1) {
            let c = sign(i) * binom(k, i) * (binom(p - 1, l - 1) + binom(p - 1, m - i - 1));
            out.add_term(Word::new(vec![-(k - i), p, l + m - i - p]), Rational::from(c));
        }
    }
    for i in 0..=(k - m) {
        let c = sign(m) * binom(m - 1 + i, m - 1);
        out.add_term(Word::new(vec![-i, -(k - m - i), l]), Rational::from(c));
    }
    out
}

fn sign(n: i64) -> Integer {
    Integer::from(if n % 2 == 0 { 1 } else { -1 })
}

/// How strongly two word sums were shown equal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EqualityLevel {
    /// Identical after normalization.
    Raw,
    /// Equal after mapping to functions and evaluating numerically.
    PsiNumeric,
    Failed,
}

impl EqualityLevel {
    pub fn as_str(&self) -> &'static str {
        match self {
            EqualityLevel::Raw => "raw",
            EqualityLevel::PsiNumeric => "psi-numeric",
            EqualityLevel::Failed => "failed",
        }
    }
}

/// Rational combination of tensor products of words.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TensorSum {
    terms: BTreeMap<(Word, Word), Rational>,
}

impl TensorSum {
    pub fn add_term(&mut self, a: Word, b: Word, c: Rational) {
        if c == 0 {
            return;
        }
        let key = (a, b);
        let slot = self.terms.entry(key.clone()).or_default();
        *slot += c;
        if *slot == 0 {
            self.terms.remove(&key);
        }
    }

    fn add_sym(&mut self, a: Word, b: Word, c: &Rational) {
        self.add_term(a.clone(), b.clone(), c.clone());
        self.add_term(b, a, c.clone());
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Word, &Rational)> {
        self.terms.iter().map(|((a, b), c)| (a, b, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, a: &Word, b: &Word) -> Rational {
        self.terms.get(&(a.clone(), b.clone())).cloned().unwrap_or_default()
    }

    /// Applies ⧢₀ to every tensor.
    pub fn shuffle(&self) -> Result<WordSum> {
        let mut sh = Shuffler::new();
        let mut out = WordSum::zero();
        for ((a, b), c) in &self.terms {
            out.add_scaled(&sh.product(a, b)?, c);
        }
        Ok(out)
    }
}

/// Accumulates a `d`/`y` word letter by letter.
#[derive(Default)]
struct DWordBuilder {
    exps: Vec<i64>,
    pending: i64,
}

impl DWordBuilder {
    fn d(mut self, n: u32) -> Self {
        self.pending += n as i64;
        self
    }

    fn y(mut self) -> Self {
        self.exps.push(-self.pending);
        self.pending = 0;
        self
    }

    fn finish(self) -> Word {
        debug_assert_eq!(self.pending, 0);
        Word::new(self.exps)
    }
}

/// Reduced coproduct of `d^{k_1} y ... d^{k_r} y`, symmetrized.
pub fn reduced_coproduct(w: &Word) -> Result<TensorSum> {
    let k = w.d_exps()?;
    let r = k.len();
    let mut out = TensorSum::default();
    if r < 2 {
        return Ok(out);
    }
    for i in 0..=k[0] {
        let c = Rational::from(binom(k[0] as i64, i as i64));
        let left = Word::from_d_exps(&[i]);
        let mut rest = vec![k[0] - i + k[1]];
        rest.extend_from_slice(&k[2..]);
        out.add_sym(left, Word::from_d_exps(&rest), &c);
    }
    for p in 2..r {
        // splits i_a + j_a = k_a for a = 0..p
        let mut split = vec![0u32; p];
        loop {
            let c: Integer = (0..p).map(|a| binom(k[a] as i64, split[a] as i64)).product();
            if c != 0 {
                let c = Rational::from(c);
                for mask in 0u32..(1 << (p - 1)) {
                    let (mut left, mut right) = (DWordBuilder::default(), DWordBuilder::default());
                    for q in 0..p - 1 {
                        let (i, j) = (split[q], k[q] - split[q]);
                        if mask & (1 << q) == 0 {
                            left = left.d(i);
                            right = right.d(j).y();
                        } else {
                            left = left.d(j).y();
                            right = right.d(i);
                        }
                    }
                    left = left.d(split[p - 1]).y();
                    right = right.d(k[p - 1] - split[p - 1] + k[p]).y();
                    for &kk in &k[p + 1..] {
                        right = right.d(kk).y();
                    }
                    out.add_sym(left.finish(), right.finish(), &c);
                }
            }
            // odometer over the splits
            let mut a = 0;
            while a < p && split[a] == k[a] {
                split[a] = 0;
                a += 1;
            }
            if a == p {
                break;
            }
            split[a] += 1;
        }
    }
    Ok(out)
}

/// Index vector of `j^{k_1} y ... j^{k_r} y` in reversed order, `(k_r, ..., k_1)`.
pub fn word_to_index(w: &Word) -> Result<IndexVector> {
    if w.tail != 0 {
        return Err(Error::TailNonzero);
    }
    if w.exps.is_empty() {
        return Err(Error::EmptyWord);
    }
    Ok(IndexVector::new(w.exps.iter().rev().copied().collect()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(e: &[i64]) -> Word {
        Word::new(e.to_vec())
    }

    fn ws(pairs: &[(&[i64], i64)]) -> WordSum {
        let mut s = WordSum::zero();
        for (e, c) in pairs {
            s.add_term(w(e), Rational::from(*c));
        }
        s
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(word_normalize("jdy").unwrap(), ws(&[(&[0], 1)]));
        assert!(word_normalize("yj").unwrap().is_empty());
        assert_eq!(word_normalize("ddyjy").unwrap(), ws(&[(&[-2, 1], 1)]));
    }

    #[test]
    fn small_products() {
        assert_eq!(shuffle0_words(&w(&[0]), &w(&[0])).unwrap(), ws(&[(&[0, 0], 1)]));
        assert_eq!(shuffle0_words(&w(&[1]), &w(&[1])).unwrap(), ws(&[(&[1, 1], 2)]));
        assert_eq!(
            shuffle0_words(&w(&[-1]), &w(&[1])).unwrap(),
            ws(&[(&[-1, 1], 1), (&[0, 0], -1)])
        );
    }

    #[test]
    fn unit_is_neutral() {
        let u = w(&[2, -1]);
        assert_eq!(shuffle0_words(&u, &Word::unit()).unwrap(), WordSum::single(u.clone()));
        assert_eq!(shuffle0_words(&Word::unit(), &u).unwrap(), WordSum::single(u));
    }

    #[test]
    fn fuel_exhaustion_is_an_error() {
        let mut sh = Shuffler::with_fuel(3);
        let r = sh.product(&w(&[3, 3]), &w(&[-3, -3]));
        assert_eq!(r, Err(Error::FuelExhausted(3)));
    }

    #[test]
    fn closed_forms_small() {
        assert_eq!(closed_shuffle_depth11(1, 1), ws(&[(&[-1, 1], 1), (&[0, 0], -1)]));
        assert_eq!(
            closed_shuffle_depth11(2, 1),
            ws(&[(&[-2, 1], 1), (&[-1, 0], -1), (&[0, -1], -1)])
        );
        assert_eq!(closed_shuffle_depth11(1, 2), ws(&[(&[-1, 2], 1), (&[0, 1], -1)]));
    }

    #[test]
    fn coproduct_small() {
        assert!(reduced_coproduct(&w(&[-3])).unwrap().is_empty());
        let yy = reduced_coproduct(&w(&[0, 0])).unwrap();
        assert_eq!(yy.len(), 1);
        assert_eq!(yy.coeff(&w(&[0]), &w(&[0])), 2);
        let dyy = reduced_coproduct(&w(&[-1, 0])).unwrap();
        assert_eq!(dyy.len(), 2);
        assert_eq!(dyy.coeff(&w(&[0]), &w(&[-1])), 2);
        assert_eq!(dyy.coeff(&w(&[-1]), &w(&[0])), 2);
        assert_eq!(reduced_coproduct(&w(&[1, 0])), Err(Error::NotDWord));
    }

    #[test]
    fn literal_round_trip() {
        for s in ["[1,-2]", "[]", "[0;3]", "[-1,0,4]"] {
            assert_eq!(s.parse::<Word>().unwrap().to_string(), s);
        }
        assert!("1,2".parse::<Word>().is_err());
    }

    #[test]
    fn index_reverses() {
        assert_eq!(word_to_index(&w(&[2, 1])).unwrap().as_slice(), &[1, 2]);
        assert_eq!(word_to_index(&Word::with_tail(vec![1], 1)), Err(Error::TailNonzero));
    }
}
