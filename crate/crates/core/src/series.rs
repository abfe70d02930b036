//! Truncated Laurent series in one variable, truncated power series in
//! several variables, and Laurent polynomials used for generating functions.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::numcore::{factorial, Integer, Rational};

pub const DEFAULT_POLE_CAP: u32 = 8;

/// `sum c_e z^e` for `e <= order`; coefficients above `order` are unknown.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedLaurent {
    coeffs: BTreeMap<i32, Rational>,
    order: i32,
    pole_cap: u32,
}

impl TruncatedLaurent {
    pub fn zero(order: i32) -> Self {
        TruncatedLaurent {
            coeffs: BTreeMap::new(),
            order,
            pole_cap: DEFAULT_POLE_CAP,
        }
    }

    pub fn from_coeffs<I>(coeffs: I, order: i32) -> Self
    where
        I: IntoIterator<Item = (i32, Rational)>,
    {
        let mut s = Self::zero(order);
        for (e, c) in coeffs {
            s.add_term(e, c);
        }
        s
    }

    pub fn monomial(c: Rational, e: i32, order: i32) -> Self {
        Self::from_coeffs([(e, c)], order)
    }

    pub fn with_pole_cap(mut self, cap: u32) -> Self {
        self.pole_cap = cap;
        self
    }

    pub fn order(&self) -> i32 {
        self.order
    }

    pub fn pole_cap(&self) -> u32 {
        self.pole_cap
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn valuation(&self) -> Option<i32> {
        self.coeffs.keys().next().copied()
    }

    pub fn pole_depth(&self) -> u32 {
        self.valuation().map_or(0, |v| (-v).max(0) as u32)
    }

    pub fn coeff(&self, e: i32) -> Rational {
        self.coeffs.get(&e).cloned().unwrap_or_default()
    }

    /// Coefficient of `z^e`, failing if it lies above the known order.
    pub fn coeff_checked(&self, e: i32) -> Result<Rational> {
        if e > self.order {
            return Err(Error::InsufficientOrder {
                required: e,
                available: self.order,
            });
        }
        Ok(self.coeff(e))
    }

    pub fn constant_term(&self) -> Result<Rational> {
        self.coeff_checked(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &Rational)> {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn add_term(&mut self, e: i32, c: Rational) {
        if e > self.order || c == 0 {
            return;
        }
        let slot = self.coeffs.entry(e).or_default();
        *slot += c;
        if *slot == 0 {
            self.coeffs.remove(&e);
        }
    }

    fn shell(&self, other: &Self, order: i32) -> Self {
        TruncatedLaurent {
            coeffs: BTreeMap::new(),
            order,
            pole_cap: self.pole_cap.min(other.pole_cap),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.shell(other, self.order.min(other.order));
        for (e, c) in self.coeffs.iter().chain(other.coeffs.iter()) {
            out.add_term(*e, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(&Rational::from(-1))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = self.clone();
        out.coeffs.clear();
        for (e, x) in &self.coeffs {
            out.add_term(*e, Rational::from(x * c));
        }
        out
    }

    /// Product, truncated where either factor's unknown tail could contribute.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        let va = self.valuation().unwrap_or(self.order + 1);
        let vb = other.valuation().unwrap_or(other.order + 1);
        let order = (self.order + vb.min(0)).min(other.order + va.min(0));
        let mut out = self.shell(other, order);
        for (ea, ca) in &self.coeffs {
            for (eb, cb) in &other.coeffs {
                let e = ea + eb;
                if e > order {
                    break;
                }
                out.add_term(e, Rational::from(ca * cb));
            }
        }
        out.check_cap()?;
        Ok(out)
    }

    fn check_cap(&self) -> Result<()> {
        let depth = self.pole_depth();
        if depth > self.pole_cap {
            return Err(Error::PoleCapExceeded {
                depth,
                cap: self.pole_cap,
            });
        }
        Ok(())
    }

    /// Termwise derivative; the known order drops by one.
    pub fn dz(&self) -> Result<Self> {
        let mut out = self.clone();
        out.coeffs.clear();
        out.order = self.order - 1;
        for (e, c) in &self.coeffs {
            out.add_term(e - 1, Rational::from(c * *e));
        }
        out.check_cap()?;
        Ok(out)
    }

    pub fn dz_n(&self, n: u32) -> Result<Self> {
        let mut out = self.clone();
        for _ in 0..n {
            out = out.dz()?;
        }
        Ok(out)
    }

    /// Negative-exponent part.
    pub fn pole_part(&self) -> Self {
        let mut out = self.clone();
        out.coeffs.retain(|e, _| *e < 0);
        out
    }

    /// Non-negative-exponent part.
    pub fn regular_part(&self) -> Self {
        let mut out = self.clone();
        out.coeffs.retain(|e, _| *e >= 0);
        out
    }

    pub fn truncate(&self, order: i32) -> Self {
        let mut out = self.clone();
        out.order = order.min(self.order);
        out.coeffs.retain(|e, _| *e <= order);
        out
    }

    /// Equality of all coefficients both series know.
    pub fn agrees_with(&self, other: &Self) -> bool {
        let n = self.order.min(other.order);
        self.truncate(n).coeffs == other.truncate(n).coeffs
    }
}

impl fmt::Display for TruncatedLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (e, c)) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})*z^{e}")?;
        }
        write!(f, " + O(z^{})", self.order + 1)
    }
}

fn exp_coeffs(n: usize) -> Vec<Rational> {
    (0..=n)
        .map(|k| Rational::from((Integer::from(1), factorial(k as u32))))
        .collect()
}

fn series_mul(a: &[Rational], b: &[Rational], n: usize) -> Vec<Rational> {
    let mut out = vec![Rational::new(); n + 1];
    for (i, x) in a.iter().enumerate().take(n + 1) {
        for (j, y) in b.iter().enumerate().take(n + 1 - i) {
            out[i + j] += Rational::from(x * y);
        }
    }
    out
}

/// `a / b` for power series with `b[0] != 0`.
fn series_div(a: &[Rational], b: &[Rational], n: usize) -> Vec<Rational> {
    let mut out: Vec<Rational> = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let mut acc = a.get(k).cloned().unwrap_or_default();
        for j in 1..=k.min(b.len() - 1) {
            acc -= Rational::from(&b[j] * &out[k - j]);
        }
        out.push(acc / &b[0]);
    }
    out
}

/// `g(z) = e^z((1+z) - e^z)/(e^z - 1)^2` to order `n`.
///
/// Both numerator and denominator vanish to second order at 0; the
/// common `z^2` is cancelled before dividing.
pub fn expand_g(n: u32) -> TruncatedLaurent {
    let n = n as usize;
    let e = exp_coeffs(n + 2);
    // ((1+z) - e^z)/z^2 = -sum_{k>=0} z^k/(k+2)!
    let inner: Vec<Rational> = (0..=n).map(|k| -e[k + 2].clone()).collect();
    let num = series_mul(&e, &inner, n);
    // (e^z - 1)/z = sum z^k/(k+1)!
    let q: Vec<Rational> = (0..=n).map(|k| e[k + 1].clone()).collect();
    let den = series_mul(&q, &q, n);
    let c = series_div(&num, &den, n);
    TruncatedLaurent::from_coeffs(c.into_iter().enumerate().map(|(k, x)| (k as i32, x)), n as i32)
}

/// Truncated power series in `nvars` variables, total degree `<= total_order`.
#[derive(Clone, Debug, PartialEq)]
pub struct MultiSeries {
    nvars: usize,
    total_order: u32,
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl MultiSeries {
    pub fn zero(nvars: usize, total_order: u32) -> Self {
        MultiSeries {
            nvars,
            total_order,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize, total_order: u32) -> Self {
        let mut s = Self::zero(nvars, total_order);
        s.add_term(vec![0; nvars], Rational::from(1));
        s
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn total_order(&self) -> u32 {
        self.total_order
    }

    pub fn add_term(&mut self, exps: Vec<u32>, c: Rational) {
        assert_eq!(exps.len(), self.nvars);
        if exps.iter().sum::<u32>() > self.total_order || c == 0 {
            return;
        }
        let slot = self.terms.entry(exps.clone()).or_default();
        *slot += c;
        if *slot == 0 {
            self.terms.remove(&exps);
        }
    }

    pub fn coeff(&self, exps: &[u32]) -> Rational {
        self.terms.get(exps).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rational)> {
        self.terms.iter()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut out = Self::zero(self.nvars, self.total_order.min(other.total_order));
        for (e, c) in self.terms.iter().chain(other.terms.iter()) {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero(self.nvars, self.total_order);
        for (e, x) in &self.terms {
            out.add_term(e.clone(), Rational::from(x * c));
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let order = self.total_order.min(other.total_order);
        let mut out = Self::zero(self.nvars, order);
        for (ea, ca) in &self.terms {
            let da: u32 = ea.iter().sum();
            for (eb, cb) in &other.terms {
                if da + eb.iter().sum::<u32>() > order {
                    continue;
                }
                let e: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, Rational::from(ca * cb));
            }
        }
        out
    }
}

/// `f(z_{i1} + ... + z_{ik})` expanded to total degree `n`.
pub fn mv_substitute_sum(f: &TruncatedLaurent, vars: &[usize], nvars: usize, n: u32) -> Result<MultiSeries> {
    if f.valuation().is_some_and(|v| v < 0) {
        return Err(Error::PolePart);
    }
    if f.order() < n as i32 {
        return Err(Error::InsufficientOrder {
            required: n as i32,
            available: f.order(),
        });
    }
    let mut linear = MultiSeries::zero(nvars, n);
    for &v in vars {
        let mut e = vec![0; nvars];
        e[v] = 1;
        linear.add_term(e, Rational::from(1));
    }
    let mut out = MultiSeries::zero(nvars, n);
    let mut power = MultiSeries::one(nvars, n);
    for k in 0..=n as i32 {
        out = out.add(&power.scale(&f.coeff(k)));
        power = power.mul(&linear);
    }
    Ok(out)
}

/// Laurent polynomial with rational coefficients in named variables.
#[derive(Clone, Debug, PartialEq)]
pub struct MultiPoly {
    names: Vec<String>,
    terms: BTreeMap<Vec<i32>, Rational>,
}

impl MultiPoly {
    pub fn zero(names: Vec<String>) -> Self {
        MultiPoly {
            names,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(names: Vec<String>, c: Rational) -> Self {
        let n = names.len();
        Self::monomial(names, vec![0; n], c)
    }

    pub fn monomial(names: Vec<String>, exps: Vec<i32>, c: Rational) -> Self {
        let mut p = Self::zero(names);
        p.add_term(exps, c);
        p
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i32>, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, exps: Vec<i32>, c: Rational) {
        assert_eq!(exps.len(), self.names.len());
        if c == 0 {
            return;
        }
        let slot = self.terms.entry(exps.clone()).or_default();
        *slot += c;
        if *slot == 0 {
            self.terms.remove(&exps);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero(self.names.clone());
        for (e, x) in &self.terms {
            out.add_term(e.clone(), Rational::from(x * c));
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&Rational::from(-1)))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.names.clone());
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, Rational::from(ca * cb));
            }
        }
        out
    }

    /// Multiply by the monomial with exponent vector `exps`.
    pub fn shift(&self, exps: &[i32]) -> Self {
        let mut out = Self::zero(self.names.clone());
        for (e, c) in &self.terms {
            let e = e.iter().zip(exps).map(|(a, b)| a + b).collect();
            out.add_term(e, c.clone());
        }
        out
    }

    /// Partial derivative in variable `var`.
    pub fn diff(&self, var: usize) -> Self {
        let mut out = Self::zero(self.names.clone());
        for (e, c) in &self.terms {
            if e[var] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[var] -= 1;
            out.add_term(e2, Rational::from(c * e[var]));
        }
        out
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})")?;
            for (name, p) in self.names.iter().zip(e) {
                if *p != 0 {
                    write!(f, "*{name}^{p}")?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from((n, d))
    }

    #[test]
    fn g_leading_coefficients() {
        let g = expand_g(6);
        assert_eq!(g.coeff(0), q(-1, 2));
        assert_eq!(g.coeff(1), q(-1, 6));
        assert_eq!(g.coeff(2), 0);
        assert_eq!(g.order(), 6);
    }

    #[test]
    fn pole_times_monomial() {
        let a = TruncatedLaurent::from_coeffs([(-1, q(1, 1)), (0, q(1, 1))], 5);
        let z = TruncatedLaurent::monomial(q(1, 1), 1, 5);
        let p = a.mul(&z).unwrap();
        assert_eq!(p.coeff(0), 1);
        assert_eq!(p.coeff(1), 1);
        assert_eq!(p.terms().count(), 2);
    }

    #[test]
    fn pole_cap_enforced() {
        let a = TruncatedLaurent::monomial(q(1, 1), -5, 10);
        assert!(matches!(a.mul(&a), Err(Error::PoleCapExceeded { depth: 10, cap: 8 })));
        let b = a.clone().with_pole_cap(12);
        assert!(b.mul(&b).is_ok());
    }

    #[test]
    fn substitution_rejects_poles() {
        let a = TruncatedLaurent::monomial(q(1, 1), -1, 4);
        assert_eq!(mv_substitute_sum(&a, &[0], 1, 3), Err(Error::PolePart));
    }

    #[test]
    fn dz_lowers_order() {
        let a = TruncatedLaurent::from_coeffs([(-1, q(1, 1)), (2, q(3, 1))], 4);
        let d = a.dz().unwrap();
        assert_eq!(d.order(), 3);
        assert_eq!(d.coeff(-2), -1);
        assert_eq!(d.coeff(1), 6);
    }
}
