//! Multiple zeta values `sum_{0<n_1<...<n_r} n_1^{-s_1} ... n_r^{-s_r}` in the
//! convergence domain (every tail sum `s_{r-j+1} + ... + s_r > j`).
//!
//! Integer arguments: non-positive entries are summed out with Faulhaber
//! polynomials, and the remaining admissible values are computed by
//! splitting the iterated integral at 1/2, which leaves polylogarithms at
//! 1/2 only. Non-integer arguments use Euler-Maclaurin tails (depth <= 2).

use std::collections::BTreeMap;

use rug::ops::Pow;

use super::li::li_eval_many;
use super::{EvalResult, Route};
use crate::closedform::IndexVector;
use crate::error::{Error, Result};
use crate::numcore::{bernoulli, binom, factorial, Float, PrecisionCtx, Rational};

/// Whether `s` lies in the convergence domain.
pub fn in_domain<T>(s: &[T]) -> bool
where
    T: Clone + Into<Rational>,
{
    let mut tail = Rational::new();
    for (j, x) in s.iter().rev().enumerate() {
        tail += x.clone().into();
        if tail <= (j + 1) as i64 {
            return false;
        }
    }
    !s.is_empty()
}

/// Coefficients `c_p` of `sum_{m=1}^{N} m^e = sum_p c_p N^p`.
fn faulhaber(e: u32) -> Vec<Rational> {
    let mut c = vec![Rational::new(); e as usize + 2];
    for i in 0..=e {
        let mut b = bernoulli(i);
        if i == 1 {
            b = -b;
        }
        c[(e + 1 - i) as usize] = b * binom(e as i64 + 1, i as i64) / Rational::from(e + 1);
    }
    c
}

/// Sums out non-positive entries, returning positive index vectors with weights.
fn reduce_nonpositive(s: &[i64]) -> Result<BTreeMap<Vec<i64>, Rational>> {
    let mut out = BTreeMap::new();
    fn go(s: Vec<i64>, c: Rational, out: &mut BTreeMap<Vec<i64>, Rational>) -> Result<()> {
        let Some(j) = s.iter().position(|&x| x <= 0) else {
            let slot = out.entry(s).or_default();
            *slot += c;
            return Ok(());
        };
        if j + 1 == s.len() {
            return Err(Error::Domain("last entry must exceed 1".into()));
        }
        let e = (-s[j]) as u32;
        let f = faulhaber(e);
        // sum_{n_{j-1} < n < n_{j+1}} n^e = P(n_{j+1} - 1) - P(n_{j-1})
        for (p, cp) in f.iter().enumerate() {
            let mut up = cp.clone();
            if p as u32 == e {
                up -= 1;
            }
            if up != 0 {
                let mut v = s.clone();
                v.remove(j);
                v[j] -= p as i64;
                go(v, Rational::from(&c * &up), out)?;
            }
            if j > 0 && *cp != 0 {
                let mut v = s.clone();
                v.remove(j);
                v[j - 1] -= p as i64;
                go(v, -Rational::from(&c * cp), out)?;
            }
        }
        Ok(())
    }
    go(s.to_vec(), Rational::from(1), &mut out)?;
    out.retain(|_, c| *c != 0);
    Ok(out)
}

/// Letters of the iterated integral, outermost first: `true` is `dt/(1-t)`.
fn integral_word(s: &[i64]) -> Vec<bool> {
    let mut w = Vec::new();
    for &k in s.iter().rev() {
        w.extend(std::iter::repeat_n(false, k as usize - 1));
        w.push(true);
    }
    w
}

/// Index vector of the polylogarithm equal to the integral of `w` from 0 to x.
fn word_index(w: &[bool]) -> IndexVector {
    let mut k = Vec::new();
    let mut zeros = 0i64;
    for &b in w {
        if b {
            k.push(zeros + 1);
            zeros = 0;
        } else {
            zeros += 1;
        }
    }
    debug_assert_eq!(zeros, 0);
    k.reverse();
    IndexVector::new(k)
}

fn admissible_value(s: &[i64], ctx: &PrecisionCtx) -> Result<(Float, Float)> {
    let bits = ctx.bits;
    let w = integral_word(s);
    let n = w.len();
    let mut pieces = Vec::new();
    for j in 0..=n {
        let left: Vec<bool> = w[..j].iter().rev().map(|b| !b).collect();
        let right = w[j..].to_vec();
        pieces.push((left, right));
    }
    let mut needed: Vec<IndexVector> = pieces
        .iter()
        .flat_map(|(a, b)| [a, b])
        .filter(|x| !x.is_empty())
        .map(|x| word_index(x))
        .collect();
    needed.sort();
    needed.dedup();
    let half = Float::with_val(bits, 0.5);
    let vals = li_eval_many(&needed, &half, ctx)?;
    let lookup = |x: &[bool]| -> (Float, Float) {
        if x.is_empty() {
            return (Float::with_val(bits, 1), Float::new(bits));
        }
        let i = needed.binary_search(&word_index(x)).unwrap();
        (vals[i].value.clone(), vals[i].err_bound.clone())
    };
    let mut value = Float::new(bits);
    let mut err = Float::new(bits);
    for (a, b) in &pieces {
        let (va, ea) = lookup(a);
        let (vb, eb) = lookup(b);
        value += Float::with_val(bits, &va * &vb);
        err += Float::with_val(bits, &va * &eb) + Float::with_val(bits, &vb * &ea);
    }
    Ok((value, err))
}

/// MZV at integer arguments in the convergence domain.
pub fn mzv_eval(s: &[i64], ctx: &PrecisionCtx) -> Result<EvalResult> {
    if !in_domain(s) {
        return Err(Error::Domain(format!("{s:?} is outside the convergence domain")));
    }
    let bits = ctx.bits;
    let mut value = Float::new(bits);
    let mut err = Float::new(bits);
    for (v, c) in reduce_nonpositive(s)? {
        let (x, e) = admissible_value(&v, ctx)?;
        let cf = Float::with_val(bits, &c);
        value += Float::with_val(bits, &cf * &x);
        err += Float::with_val(bits, cf.abs_ref()) * e;
    }
    err += Float::with_val(bits, value.abs_ref()) >> (bits as i32 - 8);
    Ok(EvalResult {
        value,
        err_bound: err,
        rigorous: false,
        route: Route::Series,
        exact: None,
    })
}

/// Riemann zeta at an integer `n != 1`; exact for `n <= 0`.
pub fn zeta_int(n: i64, ctx: &PrecisionCtx) -> Result<EvalResult> {
    if n == 1 {
        return Err(Error::Domain("zeta has a pole at 1".into()));
    }
    if n <= 0 {
        // zeta(-m) = (-1)^m B_{m+1}/(m+1) with B_1 = -1/2
        let m = (-n) as u32;
        let mut v = bernoulli(m + 1) / Rational::from(m + 1);
        if m % 2 == 1 {
            v = -v;
        }
        return Ok(EvalResult::exact(v, ctx.bits));
    }
    mzv_eval(&[n], ctx)
}

const EM_N: u32 = 64;

/// Euler-Maclaurin correction terms `B_{2k}/(2k)! (s)_{2k-1} N^{1-s-2k}` for
/// `k = 1..`, stopped once negligible.
fn em_corrections(s: &Float, nf: &Float, bits: u32) -> (Float, Float) {
    let mut sum = Float::new(bits);
    let mut poch = Float::with_val(bits, s);
    let n_pow = Float::with_val(bits, nf.pow(Float::with_val(bits, 1 - s.clone())));
    let inv_n2 = Float::with_val(bits, nf * nf).recip();
    let mut npow = n_pow * &inv_n2;
    let mut last = Float::new(bits);
    for k in 1..200u32 {
        let c = Float::with_val(bits, &bernoulli(2 * k)) / Float::with_val(bits, factorial(2 * k));
        let term = Float::with_val(bits, &c * &poch) * &npow;
        sum += &term;
        last = term.abs();
        if last.is_zero() || (last.clone() / sum.clone().abs()).to_f64() < 2f64.powi(-(bits as i32) - 8) {
            break;
        }
        poch *= Float::with_val(bits, s + (2 * k - 1)) * Float::with_val(bits, s + 2 * k);
        npow *= &inv_n2;
    }
    (sum, last * 2u32)
}

/// `sum_{n > N} n^{-e}` for real `e > 1`.
fn power_tail(e: &Float, nf: &Float, bits: u32) -> (Float, Float) {
    let one_minus = Float::with_val(bits, 1 - e.clone());
    let lead = Float::with_val(bits, nf.pow(&one_minus)) / Float::with_val(bits, e - 1u32);
    let half = Float::with_val(bits, nf.pow(Float::with_val(bits, -e.clone()))) / 2u32;
    let (corr, err) = em_corrections(e, nf, bits);
    (lead - half + corr, err)
}

/// Riemann zeta at real `s != 1`.
fn zeta_real(s: &Float, bits: u32) -> (Float, Float) {
    let nf = Float::with_val(bits, EM_N);
    let mut head = Float::new(bits);
    for n in 1..=EM_N {
        head += Float::with_val(bits, Float::with_val(bits, n).pow(Float::with_val(bits, -s.clone())));
    }
    // zeta(s) = sum_{n<=N} n^-s + sum_{n>N} n^-s, the tail continued analytically
    let (tail, err) = power_tail(s, &nf, bits);
    (head + tail, err)
}

/// MZV with rational (possibly non-integer) arguments; depth 1, or depth 2
/// with `s_1 != 1`.
pub fn mzv_eval_real(s: &[Rational], ctx: &PrecisionCtx) -> Result<EvalResult> {
    if s.iter().all(|x| *x.denom() == 1) {
        let ints: Vec<i64> = s.iter().map(|x| x.numer().to_i64().unwrap()).collect();
        return mzv_eval(&ints, ctx);
    }
    if !in_domain(s) {
        return Err(Error::Domain("outside the convergence domain".into()));
    }
    let bits = ctx.bits;
    let fl = |q: &Rational| Float::with_val(bits, q);
    let (value, err) = match s {
        [a] => zeta_real(&fl(a), bits),
        [a, b] if *a != 1 => {
            let (a, b) = (fl(a), fl(b));
            let nf = Float::with_val(bits, EM_N);
            let mut head = Float::new(bits);
            let mut inner = Float::new(bits);
            for n in 1..=EM_N {
                let x = Float::with_val(bits, n);
                head += Float::with_val(bits, x.clone().pow(Float::with_val(bits, -b.clone()))) * &inner;
                inner += x.pow(Float::with_val(bits, -a.clone()));
            }
            let (za, mut err) = zeta_real(&a, bits);
            let ab = Float::with_val(bits, &a + &b);
            let (t_b, e1) = power_tail(&b, &nf, bits);
            let (t_ab1, e2) = power_tail(&Float::with_val(bits, &ab - 1u32), &nf, bits);
            let (t_ab, e3) = power_tail(&ab, &nf, bits);
            let mut tail = Float::with_val(bits, &za * &t_b) - t_ab1 / Float::with_val(bits, &a - 1u32) - t_ab / 2u32;
            let mut poch = a.clone();
            for k in 1..60u32 {
                let c = Float::with_val(bits, &bernoulli(2 * k)) / Float::with_val(bits, factorial(2 * k));
                let e = Float::with_val(bits, &ab + (2 * k - 1));
                let (tk, _) = power_tail(&e, &nf, bits);
                let term = c * &poch * tk;
                tail -= &term;
                poch *= Float::with_val(bits, &a + (2 * k - 1)) * Float::with_val(bits, &a + 2 * k);
                if term.is_zero() || (term.abs() / tail.clone().abs()).to_f64() < 2f64.powi(-(bits as i32) - 8) {
                    break;
                }
            }
            err *= t_b.abs();
            err += e1 + e2 + e3;
            (head + tail, err)
        }
        _ => {
            return Err(Error::Unsupported(
                "non-integer arguments need depth 1, or depth 2 with s_1 != 1".into(),
            ))
        }
    };
    Ok(EvalResult {
        value,
        err_bound: err,
        rigorous: false,
        route: Route::Series,
        exact: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn val(s: &[i64]) -> f64 {
        mzv_eval(s, &PrecisionCtx::new(128)).unwrap().to_f64()
    }

    const Z2: f64 = 1.644_934_066_848_226_4;
    const Z3: f64 = 1.202_056_903_159_594_2;

    #[test]
    fn classical_values() {
        assert!((val(&[2]) - Z2).abs() < 1e-15);
        assert!((val(&[1, 2]) - Z3).abs() < 1e-15);
        assert!((val(&[0, 3]) - (Z2 - Z3)).abs() < 1e-15);
    }

    #[test]
    fn domain() {
        assert!(in_domain(&[1i64, 2]));
        assert!(!in_domain(&[0i64, 2]));
        assert!(!in_domain(&[3i64, 1]));
        assert!(mzv_eval(&[2, 1], &PrecisionCtx::new(64)).is_err());
    }

    #[test]
    fn faulhaber_small() {
        // 1 + 2 + ... + N = N/2 + N^2/2
        let f = faulhaber(1);
        assert_eq!(f[1], Rational::from((1, 2)));
        assert_eq!(f[2], Rational::from((1, 2)));
    }

    #[test]
    fn real_depth_one_matches_integer() {
        let ctx = PrecisionCtx::new(128);
        let s = [Rational::from((7, 2))];
        let v = mzv_eval_real(&s, &ctx).unwrap().to_f64();
        assert!((v - 1.126_733_867_317_057_5).abs() < 1e-14);
    }
}
