use std::collections::BTreeMap;

use rug::ops::Pow;
use rug::Assign;

use super::{EvalResult, Route};
use crate::closedform::IndexVector;
use crate::error::{Error, Result};
use crate::licomb::{zfull, LiCombination};
use crate::numcore::{factorial, Float, PrecisionCtx, Rational};
use crate::wordalg::{word_to_index, WordSum};

struct LiState {
    k: Vec<i64>,
    growth: f64,
    cum: Vec<Float>,
    q: Vec<Float>,
    sum: Float,
    err: Float,
    done: bool,
}

/// `Li_{k_1..k_r}(t) = sum_{0<n_1<...<n_r} t^{n_r} / (n_1^{k_1} ... n_r^{k_r})`
/// for several index vectors sharing one pass over `n`.
///
/// All terms are positive for `0 < t < 1`. Summation stops once the term
/// ratio is below one and the geometric tail is under `tail_tol` relative
/// to the partial sum. The tail estimate assumes the nested prefix sums
/// grow no faster than `n^P`, which holds for every integer index but is
/// only proven here for depth one.
pub fn li_eval_many(ws: &[IndexVector], t: &Float, ctx: &PrecisionCtx) -> Result<Vec<EvalResult>> {
    if !(*t > 0 && *t < 1) {
        return Err(Error::Domain(format!("Li needs 0 < t < 1, got {}", t.to_f64())));
    }
    let bits = ctx.bits;
    let neg_log_t = (-Float::with_val(bits, t.ln_ref())).to_f64();
    let mut states: Vec<LiState> = ws
        .iter()
        .map(|w| {
            let k = w.as_slice().to_vec();
            let r = k.len();
            let growth = k.iter().map(|&x| (-x).max(0) as f64).sum::<f64>() + (r - 1) as f64;
            LiState {
                k,
                growth,
                cum: vec![Float::new(bits); r.saturating_sub(1)],
                q: vec![Float::new(bits); r],
                sum: Float::new(bits),
                err: Float::new(bits),
                done: false,
            }
        })
        .collect();
    let mut exps: Vec<i64> = states.iter().flat_map(|s| s.k.iter().copied()).collect();
    exps.sort_unstable();
    exps.dedup();
    let mut powers: BTreeMap<i64, Float> = exps.iter().map(|&e| (e, Float::new(bits))).collect();
    let tol = ctx.tail_tol;
    let mut tn = Float::with_val(bits, 1);
    let mut term = Float::new(bits);
    let mut remaining = states.len();
    let mut n: u64 = 0;
    while remaining > 0 {
        n += 1;
        if n > ctx.max_terms {
            return Err(Error::NonConvergence {
                terms: ctx.max_terms,
                detail: format!("Li at t = {}", t.to_f64()),
            });
        }
        tn *= t;
        let nf = Float::with_val(bits, n);
        for (e, p) in powers.iter_mut() {
            p.assign((&nf).pow(-*e as i32));
        }
        for st in states.iter_mut().filter(|s| !s.done) {
            let r = st.k.len();
            st.q[0].assign(&powers[&st.k[0]]);
            for j in 1..r {
                st.q[j].assign(&powers[&st.k[j]] * &st.cum[j - 1]);
            }
            for j in 0..r - 1 {
                st.cum[j] += &st.q[j];
            }
            term.assign(&tn * &st.q[r - 1]);
            st.sum += &term;
            if (n as usize) < r || st.sum == 0 {
                continue;
            }
            let nn = n as f64;
            if nn * neg_log_t <= 2.0 * st.growth {
                continue;
            }
            let rho = (-neg_log_t + st.growth / nn).exp();
            let tail = Float::with_val(bits, &term * rho) / (1.0 - rho);
            let rel = Float::with_val(bits, &tail / &st.sum);
            if rel.to_f64() <= tol {
                let rounding = Float::with_val(bits, &st.sum * (nn * (r as f64 + 2.0))) >> (bits as i32 - 1);
                st.err = tail + rounding;
                st.done = true;
                remaining -= 1;
            }
        }
    }
    Ok(states
        .into_iter()
        .map(|s| EvalResult {
            rigorous: s.k.len() == 1,
            value: s.sum,
            err_bound: s.err,
            route: Route::Series,
            exact: None,
        })
        .collect())
}

pub fn li_eval(w: &IndexVector, t: &Float, ctx: &PrecisionCtx) -> Result<EvalResult> {
    Ok(li_eval_many(std::slice::from_ref(w), t, ctx)?.remove(0))
}

/// Numeric value of a combination `sum c (-log t)^q/q! Li_w(t)`.
pub fn licomb_eval(z: &LiCombination, t: &Float, ctx: &PrecisionCtx) -> Result<EvalResult> {
    let bits = ctx.bits;
    let idx = z.indices();
    let vals = li_eval_many(&idx, t, ctx)?;
    let by_index: BTreeMap<&IndexVector, &EvalResult> = idx.iter().zip(vals.iter()).collect();
    let minus_log = -Float::with_val(bits, t.ln_ref());
    let mut value = Float::new(bits);
    let mut err = Float::new(bits);
    let mut rigorous = true;
    for (q, w, c) in z.terms() {
        let li = by_index[w];
        let pref = Float::with_val(bits, (&minus_log).pow(q)) / Float::with_val(bits, factorial(q));
        let coef = Float::with_val(bits, c) * &pref;
        value += Float::with_val(bits, &coef * &li.value);
        err += Float::with_val(bits, coef.abs_ref()) * &li.err_bound;
        err += Float::with_val(bits, &coef * &li.value).abs() >> (bits as i32 - 4);
        rigorous &= li.rigorous;
    }
    Ok(EvalResult {
        value,
        err_bound: err,
        rigorous,
        route: Route::Series,
        exact: None,
    })
}

/// Image of a word sum under `j^{k_1} y ... j^{k_r} y -> desLi(k_r, ..., k_1)`,
/// evaluated at `t`. The empty word maps to 1.
pub fn psi_eval(ws: &WordSum, t: &Float, ctx: &PrecisionCtx) -> Result<EvalResult> {
    let mut comb = LiCombination::zero();
    let mut constant = Rational::new();
    for (w, c) in ws.terms() {
        if w.is_unit() {
            constant += c;
            continue;
        }
        comb.add_scaled(&zfull(&word_to_index(w)?)?, c);
    }
    let mut out = licomb_eval(&comb, t, ctx)?;
    out.value += Float::with_val(ctx.bits, &constant);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(k: &[i64]) -> IndexVector {
        IndexVector::new(k.to_vec())
    }

    fn close(a: &Float, b: f64, tol: f64) -> bool {
        (a.to_f64() - b).abs() <= tol * b.abs().max(1.0)
    }

    #[test]
    fn rational_closed_forms() {
        let ctx = PrecisionCtx::new(128);
        for &t in &[0.1, 0.5, 0.9] {
            let tf = Float::with_val(128, t);
            let l0 = li_eval(&iv(&[0]), &tf, &ctx).unwrap();
            let l1 = li_eval(&iv(&[-1]), &tf, &ctx).unwrap();
            let l2 = li_eval(&iv(&[-2]), &tf, &ctx).unwrap();
            assert!(close(&l0.value, t / (1.0 - t), 1e-14));
            assert!(close(&l1.value, t / (1.0 - t).powi(2), 1e-14));
            assert!(close(&l2.value, t * (t + 1.0) / (1.0 - t).powi(3), 1e-14));
        }
    }

    #[test]
    fn one_one_at_half() {
        let ctx = PrecisionCtx::new(128);
        let v = li_eval(&iv(&[1, 1]), &Float::with_val(128, 0.5), &ctx).unwrap();
        let ln2 = std::f64::consts::LN_2;
        assert!(close(&v.value, ln2 * ln2 / 2.0, 1e-15));
    }

    #[test]
    fn rejects_bad_t() {
        let ctx = PrecisionCtx::new(64);
        assert!(li_eval(&iv(&[1]), &Float::with_val(64, 1.0), &ctx).is_err());
    }
}
