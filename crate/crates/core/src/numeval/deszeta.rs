use std::collections::BTreeMap;

use super::li::licomb_eval;
use super::mzv::{in_domain, mzv_eval, mzv_eval_real, zeta_int};
use super::{EvalResult, Route, RouteChoice};
use crate::closedform::{coeff_a, deszeta_nonpos_bernoulli, IndexVector};
use crate::error::{Error, Result};
use crate::licomb::zfull;
use crate::numcore::{binom, pochhammer, Float, PrecisionCtx, Rational};

/// Node schedule and stopping rule for the `t -> 1` extrapolation.
#[derive(Clone, Debug)]
pub struct RouteAOptions {
    /// Nodes are `h = 1 - t = 2^-j` for `j = j_min, j_min + 1, ...`.
    pub j_min: u32,
    pub j_max: u32,
    /// Stop when successive extrapolants differ by less than `tol` (relative to max(1, |value|))
    /// and the last three differences decrease.
    pub tol: f64,
    /// At least 4, so that three differences exist.
    pub min_nodes: usize,
}

impl Default for RouteAOptions {
    fn default() -> Self {
        RouteAOptions {
            j_min: 3,
            j_max: 16,
            tol: 1e-20,
            min_nodes: 4,
        }
    }
}

/// Limit `t -> 1` of the closed form, by polynomial extrapolation in
/// `h = 1 - t` from nodes `h = 2^-j`. The closed form is analytic in `h` on
/// the unit disc, so the Neville diagonal converges geometrically.
pub fn route_a(k: &IndexVector, opts: &RouteAOptions, ctx: &PrecisionCtx) -> Result<EvalResult> {
    let bits = ctx.bits;
    let min_nodes = opts.min_nodes.max(4);
    let z = zfull(k)?;
    let mut nodes: Vec<Float> = Vec::new();
    let mut prev: Vec<Float> = Vec::new();
    let mut diag: Vec<Float> = Vec::new();
    let mut steps: Vec<Float> = Vec::new();
    let mut eval_err = Float::new(bits);
    for j in opts.j_min..=opts.j_max {
        let h = Float::with_val(bits, 1u32) >> j as i32;
        let t = Float::with_val(bits, 1u32 - h.clone());
        let y = licomb_eval(&z, &t, ctx)?;
        if y.err_bound > eval_err {
            eval_err = y.err_bound.clone();
        }
        nodes.push(h);
        let n = nodes.len() - 1;
        let mut cur = vec![Float::new(bits); n + 1];
        cur[n] = y.value;
        for i in (0..n).rev() {
            let num = Float::with_val(bits, &nodes[i] * &cur[i + 1]) - Float::with_val(bits, &nodes[n] * &prev[i]);
            cur[i] = num / Float::with_val(bits, &nodes[i] - &nodes[n]);
        }
        if let Some(d) = diag.last() {
            steps.push(Float::with_val(bits, &cur[0] - d).abs());
        }
        diag.push(cur[0].clone());
        prev = cur;
        if diag.len() >= min_nodes {
            let last = &diag[diag.len() - 1];
            let step = steps[steps.len() - 1].clone();
            let scale = last.clone().abs().max(&Float::with_val(bits, 1));
            // the last three improvements must shrink monotonically
            let monotone = steps[steps.len() - 3..].windows(2).all(|w| w[1] <= w[0]);
            if monotone && (step.clone() / scale).to_f64() <= opts.tol {
                return Ok(EvalResult {
                    value: last.clone(),
                    err_bound: step + eval_err,
                    rigorous: false,
                    route: Route::ExtrapolationA,
                    exact: None,
                });
            }
        }
    }
    let trail: Vec<String> = diag.iter().map(|d| format!("{:.6e}", d.to_f64())).collect();
    Err(Error::ExtrapolationFailed(format!(
        "{k}: diagonal {}",
        trail.join(", ")
    )))
}

type Poly = Vec<Rational>;

fn poly_rising(l: u32) -> Poly {
    let mut p: Poly = vec![Rational::from(1)];
    for i in 0..l {
        let mut q = vec![Rational::new(); p.len() + 1];
        for (d, c) in p.iter().enumerate() {
            q[d + 1] += c;
            q[d] += Rational::from(c * i);
        }
        p = q;
    }
    p
}

fn poly_add_scaled(acc: &mut Poly, p: &Poly, c: &Rational) {
    if acc.len() < p.len() {
        acc.resize(p.len(), Rational::new());
    }
    for (a, x) in acc.iter_mut().zip(p) {
        *a += Rational::from(x * c);
    }
}

fn poly_eval(p: &Poly, x: i64) -> Rational {
    p.iter().rev().fold(Rational::new(), |acc, c| acc * x + c)
}

fn poly_deriv_eval(p: &Poly, x: i64) -> Rational {
    let d: Poly = p
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| Rational::from(c * i as u32))
        .collect();
    poly_eval(&d, x)
}

fn poly_is_zero(p: &Poly) -> bool {
    p.iter().all(|c| *c == 0)
}

struct Accum {
    exact: Rational,
    float: Float,
    err: Float,
    has_float: bool,
}

impl Accum {
    fn add_exact(&mut self, q: Rational) {
        self.exact += q;
    }

    fn add_value(&mut self, c: &Rational, v: &EvalResult) {
        if let Some(q) = &v.exact {
            self.exact += Rational::from(c * q);
            return;
        }
        let bits = self.float.prec();
        let cf = Float::with_val(bits, c);
        self.float += Float::with_val(bits, &cf * &v.value);
        self.err += Float::with_val(bits, cf.abs_ref()) * &v.err_bound;
        self.has_float = true;
    }
}

/// Finite combination of multiple zeta values along the line where only the
/// last argument varies. Poles of individual terms are resolved through
/// residues when the combined coefficient vanishes at the point. Returns
/// `None` when some required value is unavailable.
pub fn route_b(k: &IndexVector, ctx: &PrecisionCtx) -> Result<Option<EvalResult>> {
    let r = k.depth();
    if r > 3 {
        return Ok(None);
    }
    let ks = k.as_slice();
    let x0 = k.last();
    let table = coeff_a(r, 0)?;
    let mut groups: BTreeMap<Vec<i64>, Poly> = BTreeMap::new();
    for ((l, m), a) in &table.entries {
        let mut c = a.clone();
        for j in 0..r - 1 {
            c *= pochhammer(ks[j], l[j]);
        }
        if c == 0 {
            continue;
        }
        poly_add_scaled(
            groups.entry(m.clone()).or_default(),
            &poly_rising(l[r - 1]),
            &Rational::from(c),
        );
    }
    let mut acc = Accum {
        exact: Rational::new(),
        float: Float::new(ctx.bits),
        err: Float::new(ctx.bits),
        has_float: false,
    };
    // depth-one pieces zeta(x + shift), keyed by shift
    let mut pieces: BTreeMap<i64, Poly> = BTreeMap::new();
    let half = Rational::from((1, 2));
    for (m, p) in groups.iter().filter(|(_, p)| !poly_is_zero(p)) {
        let v: Vec<i64> = ks.iter().zip(m).map(|(a, b)| a + b).collect();
        let shift = m[r - 1];
        if r == 1 {
            poly_add_scaled(pieces.entry(shift).or_default(), p, &Rational::from(1));
        } else if r == 2 && v[0] == 0 {
            // zeta_2(0, s) = zeta(s - 1) - zeta(s)
            poly_add_scaled(pieces.entry(shift - 1).or_default(), p, &Rational::from(1));
            poly_add_scaled(pieces.entry(shift).or_default(), p, &Rational::from(-1));
        } else if r == 2 && v[0] == -1 {
            // zeta_2(-1, s) = (zeta(s - 2) - zeta(s - 1))/2
            poly_add_scaled(pieces.entry(shift - 2).or_default(), p, &half);
            poly_add_scaled(pieces.entry(shift - 1).or_default(), p, &-half.clone());
        } else if in_domain(&v) {
            let c = poly_eval(p, x0);
            if c != 0 {
                acc.add_value(&c, &mzv_eval(&v, ctx)?);
            }
        } else if r == 2 && v[1] == 1 && v[0] >= 2 {
            // (s - 1) zeta_2(n, s) -> zeta(n) as s -> 1
            if poly_eval(p, x0) != 0 {
                return Ok(None);
            }
            acc.add_value(&poly_deriv_eval(p, x0), &zeta_int(v[0], ctx)?);
        } else {
            return Ok(None);
        }
    }
    for (shift, q) in pieces.iter().filter(|(_, q)| !poly_is_zero(q)) {
        let z = x0 + shift;
        let c = poly_eval(q, x0);
        if z == 1 {
            if c != 0 {
                return Ok(None);
            }
            acc.add_exact(poly_deriv_eval(q, x0));
        } else if c != 0 {
            acc.add_value(&c, &zeta_int(z, ctx)?);
        }
    }
    let bits = ctx.bits;
    let value = Float::with_val(bits, &acc.exact) + &acc.float;
    Ok(Some(EvalResult {
        value,
        err_bound: acc.err,
        rigorous: !acc.has_float,
        route: Route::CombinationB,
        exact: (!acc.has_float).then_some(acc.exact),
    }))
}

/// Value of the desingularized function at an integer point.
///
/// Non-positive points are exact. Otherwise `Auto` tries the MZV
/// combination first and falls back to extrapolation.
pub fn deszeta_eval(k: &IndexVector, choice: RouteChoice, ctx: &PrecisionCtx) -> Result<EvalResult> {
    if choice != RouteChoice::A {
        if let Some(neg) = k.negated_nonpositive() {
            return Ok(EvalResult::exact(deszeta_nonpos_bernoulli(&neg), ctx.bits));
        }
    }
    match choice {
        RouteChoice::A => route_a(k, &RouteAOptions::default(), ctx),
        RouteChoice::B => {
            route_b(k, ctx)?.ok_or_else(|| Error::Unsupported(format!("no finite MZV combination for {k}")))
        }
        RouteChoice::Auto => match route_b(k, ctx)? {
            Some(v) => Ok(v),
            None => route_a(k, &RouteAOptions::default(), ctx),
        },
    }
}

/// `value(..., s_{r-1}, -K) = sum_i C(K,i) value(..., s_{r-1} - K + i) value(-i)`.
pub fn deszeta_trailing_reduction(k: &IndexVector, ctx: &PrecisionCtx) -> Result<EvalResult> {
    let r = k.depth();
    let big_k = -k.last();
    if r < 2 || big_k < 0 {
        return Err(Error::Domain(format!(
            "{k}: needs depth >= 2 and a non-positive last entry"
        )));
    }
    let bits = ctx.bits;
    let mut acc = Accum {
        exact: Rational::new(),
        float: Float::new(bits),
        err: Float::new(bits),
        has_float: false,
    };
    for i in 0..=big_k {
        let mut head = k.as_slice()[..r - 1].to_vec();
        head[r - 2] += i - big_k;
        let outer = deszeta_eval(&IndexVector::new(head), RouteChoice::Auto, ctx)?;
        let c = Rational::from(binom(big_k, i)) * deszeta_nonpos_bernoulli(&[i as u32]);
        acc.add_value(&c, &outer);
    }
    let value = Float::with_val(bits, &acc.exact) + &acc.float;
    Ok(EvalResult {
        value,
        err_bound: acc.err,
        rigorous: !acc.has_float,
        route: Route::Recurrence,
        exact: (!acc.has_float).then_some(acc.exact),
    })
}

/// `(s - 1) zeta_2(n, s) - zeta(n)` at `s = 1 + eps`.
pub fn pole_limit_check(n: i64, eps: &Rational, ctx: &PrecisionCtx) -> Result<EvalResult> {
    if n < 2 {
        return Err(Error::Domain("need n >= 2".into()));
    }
    let bits = ctx.bits;
    let s = Rational::from(eps + 1u32);
    let z2 = mzv_eval_real(&[Rational::from(n), s], ctx)?;
    let zn = zeta_int(n, ctx)?;
    let e = Float::with_val(bits, eps);
    let value = Float::with_val(bits, &e * &z2.value) - &zn.value;
    let err = Float::with_val(bits, e.abs_ref()) * &z2.err_bound + &zn.err_bound;
    Ok(EvalResult {
        value,
        err_bound: err,
        rigorous: false,
        route: Route::Series,
        exact: None,
    })
}
