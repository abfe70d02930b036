//! Closed forms of the desingularized polylogarithm as finite combinations
//! of `(-log t)^q / q! * Li_w(t)`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::closedform::{coeff_a, IndexVector};
use crate::error::{Error, Result};
use crate::numcore::{binom, factorial, Integer, Rational};

/// `sum c * (-log t)^q / q! * Li_w(t)` keyed by `(q, w)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LiCombination {
    terms: BTreeMap<(u32, IndexVector), Rational>,
}

impl LiCombination {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn add_term(&mut self, q: u32, w: IndexVector, c: Rational) {
        if c == 0 {
            return;
        }
        let key = (q, w);
        let slot = self.terms.entry(key.clone()).or_default();
        *slot += c;
        if *slot == 0 {
            self.terms.remove(&key);
        }
    }

    pub fn add_scaled(&mut self, other: &Self, c: &Rational) {
        for ((q, w), x) in &other.terms {
            self.add_term(*q, w.clone(), Rational::from(x * c));
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &Rational::from(1));
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &Rational::from(-1));
        out
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &IndexVector, &Rational)> {
        self.terms.iter().map(|((q, w), c)| (*q, w, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn max_log_power(&self) -> u32 {
        self.terms.keys().map(|(q, _)| *q).max().unwrap_or(0)
    }

    /// Moves every term to log slot `q`.
    fn at_slot(&self, q: u32) -> Self {
        let mut out = Self::zero();
        for ((_, w), c) in &self.terms {
            out.add_term(q, w.clone(), c.clone());
        }
        out
    }

    /// `t d/dt`, using `D Li_w = Li_{w'}` with the last index lowered by one.
    pub fn d(&self) -> Self {
        let mut out = Self::zero();
        for ((q, w), c) in &self.terms {
            out.add_term(*q, w.prime(), c.clone());
            if *q > 0 {
                out.add_term(q - 1, w.clone(), -c.clone());
            }
        }
        out
    }

    pub fn d_n(&self, n: u32) -> Self {
        (0..n).fold(self.clone(), |acc, _| acc.d())
    }

    /// Distinct `Li` indices appearing in the combination.
    pub fn indices(&self) -> Vec<IndexVector> {
        let mut v: Vec<IndexVector> = self.terms.keys().map(|(_, w)| w.clone()).collect();
        v.sort();
        v.dedup();
        v
    }
}

impl fmt::Display for LiCombination {
    /// Terms print as `c * logt^q * Li[k1,...,kr]` joined by ` + `, where
    /// `c` already absorbs the `(-1)^q / q!` of the stored convention.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, ((q, w), c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            let mut printed = Rational::from(c / factorial(*q));
            if q % 2 == 1 {
                printed = -printed;
            }
            let idx: Vec<String> = w.as_slice().iter().map(|k| k.to_string()).collect();
            write!(f, "{printed} * logt^{q} * Li[{}]", idx.join(","))?;
        }
        Ok(())
    }
}

impl FromStr for LiCombination {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |t: &str| Error::Parse(format!("bad term {t:?}"));
        let mut out = LiCombination::zero();
        if s.trim() == "0" {
            return Ok(out);
        }
        for term in s.split(" + ") {
            let parts: Vec<&str> = term.split(" * ").map(str::trim).collect();
            let [c, lg, li] = parts[..] else {
                return Err(bad(term));
            };
            let c: Rational = c.parse().map_err(|_| bad(term))?;
            let q: u32 = lg
                .strip_prefix("logt^")
                .and_then(|x| x.parse().ok())
                .ok_or_else(|| bad(term))?;
            let w: IndexVector = li.strip_prefix("Li").ok_or_else(|| bad(term))?.parse()?;
            let mut stored = c * factorial(q);
            if q % 2 == 1 {
                stored = -stored;
            }
            out.add_term(q, w, stored);
        }
        Ok(out)
    }
}

/// `Z_0(k) = sum a_{l,m}(0) prod (k_j)_{l_j} Li_{k+m}`.
pub fn z0(k: &IndexVector) -> Result<LiCombination> {
    let t = coeff_a(k.depth(), 0)?;
    let mut out = LiCombination::zero();
    for (m, c) in t.pochhammer_coeffs(k.as_slice()) {
        out.add_term(0, k.add(&m), Rational::from(c));
    }
    Ok(out)
}

/// `Z_q(k) = sum_{i+j=q} (-1)^j C(q,i) D^i[Z_0(k^{(j)})]`, without the log prefactor.
pub fn zq_def(k: &IndexVector, q: u32) -> Result<LiCombination> {
    let mut out = LiCombination::zero();
    for j in 0..=q {
        let i = q - j;
        let mut c = Rational::from(binom(q as i64, i as i64));
        if j % 2 == 1 {
            c = -c;
        }
        out.add_scaled(&z0(&k.shift_last(j as i64))?.d_n(i), &c);
    }
    Ok(out)
}

/// `Z_q(k) = sum a_{l,m}(q) prod (k_j)_{l_j} Li_{k+m}`.
pub fn zq_appendix(k: &IndexVector, q: u32) -> Result<LiCombination> {
    let t = coeff_a(k.depth(), q)?;
    let mut out = LiCombination::zero();
    for (m, c) in t.pochhammer_coeffs(k.as_slice()) {
        out.add_term(0, k.add(&m), Rational::from(c));
    }
    Ok(out)
}

/// `Z_q(k)` from both constructions, which must agree term for term.
pub fn zq(k: &IndexVector, q: u32) -> Result<LiCombination> {
    let a = zq_def(k, q)?;
    let b = zq_appendix(k, q)?;
    if a != b {
        return Err(Error::Integrity(format!(
            "Z_{q}{k} differs between constructions: {a} vs {b}"
        )));
    }
    Ok(a)
}

/// Highest power of `u_r` in `G_r`; `Z_q` vanishes for larger `q`.
pub fn dr_bound(r: usize) -> Result<u32> {
    Ok(coeff_a(r, 0)?.max_last_l())
}

/// `Z(k) = sum_{q <= d_r} (-log t)^q / q! * Z_q(k)`.
pub fn zfull(k: &IndexVector) -> Result<LiCombination> {
    let mut out = LiCombination::zero();
    for q in 0..=dr_bound(k.depth())? {
        out = out.add(&zq(k, q)?.at_slot(q));
    }
    Ok(out)
}

/// Pochhammer sum identity, `sum_{i+j=q} (-1)^j C(q,i) (s-j)_{l+q} = (l+1)_q (s)_l`.
pub fn pochhammer_sum_sides(s: i64, l: u32, q: u32) -> (Integer, Integer) {
    use crate::numcore::pochhammer;
    let mut lhs = Integer::new();
    for j in 0..=q {
        let term = binom(q as i64, (q - j) as i64) * pochhammer(s - j as i64, l + q);
        if j % 2 == 1 {
            lhs -= term;
        } else {
            lhs += term;
        }
    }
    (lhs, pochhammer(l as i64 + 1, q) * pochhammer(s, l))
}
