//! Characters on `d`/`y` words built from a Laurent series `f`, their
//! Birkhoff decomposition, and the renormalized values `F(k)`.

use std::collections::HashMap;

use crate::closedform::{compare_series, multi_indices, GenCheck};
use crate::error::{Error, Result};
use crate::numcore::{binom, factorial, Rational};
use crate::series::{mv_substitute_sum, MultiSeries, TruncatedLaurent};
use crate::wordalg::{reduced_coproduct, Word, WordSum};

/// The series `f` defining the character; its order is the truncation.
#[derive(Clone, Debug)]
pub struct CharacterSpec {
    pub f: TruncatedLaurent,
}

impl CharacterSpec {
    pub fn new(f: TruncatedLaurent) -> Self {
        CharacterSpec { f }
    }

    pub fn order(&self) -> i32 {
        self.f.order()
    }
}

/// `d^{k_1}[f d^{k_2}[f ... d^{k_r}[f]]]` for `w = d^{k_1} y ... d^{k_r} y`.
pub fn phi_eval(w: &Word, spec: &CharacterSpec) -> Result<TruncatedLaurent> {
    let k = w.d_exps()?;
    let Some((&last, rest)) = k.split_last() else {
        return Err(Error::EmptyWord);
    };
    let mut x = spec.f.dz_n(last)?;
    for &ki in rest.iter().rev() {
        x = spec.f.mul(&x)?.dz_n(ki)?;
    }
    Ok(x)
}

pub fn phi_eval_sum(ws: &WordSum, spec: &CharacterSpec) -> Result<TruncatedLaurent> {
    let mut out = TruncatedLaurent::zero(i32::MAX).with_pole_cap(spec.f.pole_cap());
    for (w, c) in ws.terms() {
        out = out.add(&phi_eval(w, spec)?.scale(c));
    }
    Ok(out)
}

/// Memoized Birkhoff factors `phi_-` and `phi_+`.
pub struct BirkhoffPair<'a> {
    spec: &'a CharacterSpec,
    minus: HashMap<Word, TruncatedLaurent>,
    plus: HashMap<Word, TruncatedLaurent>,
}

impl<'a> BirkhoffPair<'a> {
    pub fn new(spec: &'a CharacterSpec) -> Self {
        BirkhoffPair {
            spec,
            minus: HashMap::new(),
            plus: HashMap::new(),
        }
    }

    /// `(phi_-(w), phi_+(w))`.
    pub fn decompose(&mut self, w: &Word) -> Result<(TruncatedLaurent, TruncatedLaurent)> {
        if let (Some(m), Some(p)) = (self.minus.get(w), self.plus.get(w)) {
            return Ok((m.clone(), p.clone()));
        }
        let mut bar = phi_eval(w, self.spec)?;
        for (a, b, c) in reduced_coproduct(w)?.terms() {
            let (m, _) = self.decompose(a)?;
            let term = m.mul(&phi_eval(b, self.spec)?)?;
            bar = bar.add(&term.scale(c));
        }
        let minus = bar.pole_part().neg();
        let plus = bar.regular_part();
        self.minus.insert(w.clone(), minus.clone());
        self.plus.insert(w.clone(), plus.clone());
        Ok((minus, plus))
    }

    pub fn minus(&mut self, w: &Word) -> Result<TruncatedLaurent> {
        Ok(self.decompose(w)?.0)
    }

    pub fn plus(&mut self, w: &Word) -> Result<TruncatedLaurent> {
        Ok(self.decompose(w)?.1)
    }

    /// `F(k)`: constant term of `phi_+(d^{k_r} y ... d^{k_1} y)`.
    pub fn f_value(&mut self, k: &[u32]) -> Result<Rational> {
        let rev: Vec<u32> = k.iter().rev().copied().collect();
        self.plus(&Word::from_d_exps(&rev))?.constant_term()
    }
}

/// `F(k)` for a single index vector.
pub fn f_value(k: &[u32], spec: &CharacterSpec) -> Result<Rational> {
    BirkhoffPair::new(spec).f_value(k)
}

/// `F(k) = sum_{i+j=k_r} C(k_r,i) F(i) F(k_1..k_{r-2}, k_{r-1}+j)` for `r >= 2`.
pub fn renorm_recurrence_check(k: &[u32], spec: &CharacterSpec) -> Result<bool> {
    let r = k.len();
    if r < 2 {
        return Err(Error::Domain("recurrence needs depth >= 2".into()));
    }
    let mut bp = BirkhoffPair::new(spec);
    let lhs = bp.f_value(k)?;
    let kr = k[r - 1];
    let mut rhs = Rational::new();
    for i in 0..=kr {
        let mut shorter = k[..r - 1].to_vec();
        shorter[r - 2] += kr - i;
        let c = binom(kr as i64, i as i64);
        rhs += bp.f_value(&[i])? * bp.f_value(&shorter)? * c;
    }
    Ok(lhs == rhs)
}

/// Compares `sum z^k/k! F(k)` with `f(z_r) f(z_{r-1}+z_r) ... f(z_1+...+z_r)`
/// (regular part of `f`) to total degree `n`.
pub fn check_f_generating(r: usize, spec: &CharacterSpec, n: u32) -> Result<GenCheck> {
    let mut bp = BirkhoffPair::new(spec);
    let mut lhs = MultiSeries::zero(r, n);
    for k in multi_indices(r, n) {
        let mut c = bp.f_value(&k)?;
        for &ki in &k {
            c /= factorial(ki);
        }
        lhs.add_term(k, c);
    }
    let reg = spec.f.regular_part();
    let mut rhs = MultiSeries::one(r, n);
    for i in 0..r {
        let vars: Vec<usize> = (i..r).collect();
        rhs = rhs.mul(&mv_substitute_sum(&reg, &vars, r, n)?);
    }
    Ok(compare_series(&lhs, &rhs, r, n))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn laurent(pairs: &[(i32, i64)], order: i32) -> TruncatedLaurent {
        TruncatedLaurent::from_coeffs(pairs.iter().map(|&(e, c)| (e, Rational::from(c))), order)
    }

    #[test]
    fn power_series_has_trivial_counterterm() {
        let spec = CharacterSpec::new(laurent(&[(0, 2), (1, 3), (3, -1)], 12));
        let mut bp = BirkhoffPair::new(&spec);
        for w in [Word::from_d_exps(&[0, 1]), Word::from_d_exps(&[2, 0, 1])] {
            assert!(bp.minus(&w).unwrap().is_zero());
        }
    }

    #[test]
    fn simple_pole() {
        let spec = CharacterSpec::new(laurent(&[(-1, 1)], 10));
        let mut bp = BirkhoffPair::new(&spec);
        let y = Word::from_d_exps(&[0]);
        let (m, p) = bp.decompose(&y).unwrap();
        assert_eq!(m, laurent(&[(-1, -1)], 10));
        assert!(p.is_zero());
    }

    #[test]
    fn shifted_pole_square() {
        let spec = CharacterSpec::new(laurent(&[(-1, 1), (0, 5)], 10));
        let yy = Word::from_d_exps(&[0, 0]);
        let p = BirkhoffPair::new(&spec).plus(&yy).unwrap();
        assert_eq!(p.constant_term().unwrap(), 25);
    }
}
