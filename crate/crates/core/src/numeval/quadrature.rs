//! Double-precision oracle for the desingularized polylogarithm defined by
//! iterated `J[f](t) = int_0^t f(z) dz/z` and `D = t d/dt`.
//!
//! Everything is written in `u = log t`, where `J` is integration from
//! `-inf` and `D` is `d/du`; `J^k` collapses to one integral with kernel
//! `(u - v)^{k-1}/(k-1)!`.

use super::{EvalResult, Route};
use crate::closedform::IndexVector;
use crate::error::{Error, Result};
use crate::numcore::Float;

/// `desLi(0)(t) = t/(1-t) + t log t/(1-t)^2`.
pub fn desli0(t: f64) -> f64 {
    let s = 1.0 - t;
    t / s + t * t.ln() / (s * s)
}

fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        out.push((x, 2.0 / ((1.0 - x * x) * dp * dp)));
    }
    out
}

type Fun<'a> = Box<dyn Fn(f64) -> f64 + 'a>;

const LOWER_SPAN: f64 = 60.0;
const PANEL: f64 = 1.0;
const STEP: f64 = 1e-2;

fn j_power<'a>(f: Fun<'a>, k: u32, nodes: &'a [(f64, f64)]) -> Fun<'a> {
    let fact: f64 = (1..k).map(|i| i as f64).product();
    Box::new(move |u: f64| {
        let panels = (LOWER_SPAN / PANEL) as usize;
        let mut acc = 0.0;
        for p in 0..panels {
            let a = u - LOWER_SPAN + p as f64 * PANEL;
            let mid = a + PANEL / 2.0;
            for &(x, w) in nodes {
                let v = mid + x * PANEL / 2.0;
                acc += w * (u - v).powi(k as i32 - 1) * f(v);
            }
        }
        acc * PANEL / 2.0 / fact
    })
}

fn d_power<'a>(f: Fun<'a>, m: u32) -> Fun<'a> {
    let h = STEP;
    match m {
        1 => Box::new(move |u| (-f(u + 2.0 * h) + 8.0 * f(u + h) - 8.0 * f(u - h) + f(u - 2.0 * h)) / (12.0 * h)),
        2 => Box::new(move |u| {
            (-f(u + 2.0 * h) + 16.0 * f(u + h) - 30.0 * f(u) + 16.0 * f(u - h) - f(u - 2.0 * h)) / (12.0 * h * h)
        }),
        _ => unreachable!(),
    }
}

fn apply<'a>(f: Fun<'a>, k: i64, nodes: &'a [(f64, f64)]) -> Fun<'a> {
    match k {
        0 => f,
        k if k > 0 => j_power(f, k as u32, nodes),
        k => d_power(f, (-k) as u32),
    }
}

/// `J^{k_r}[L_0 J^{k_{r-1}}[L_0 ... J^{k_1}[L_0]]](t)` by quadrature and
/// finite differences, with negative powers of `J` read as powers of `D`.
///
/// Limited to depth <= 2 and `|k_i| <= 2`.
pub fn desli_quadrature_oracle(k: &IndexVector, t: f64) -> Result<EvalResult> {
    let ks = k.as_slice();
    if ks.len() > 2 || ks.iter().any(|x| x.abs() > 2) {
        return Err(Error::Unsupported("oracle covers depth <= 2 and |k_i| <= 2".into()));
    }
    if !(t > 0.0 && t < 0.95) {
        return Err(Error::Domain("oracle needs 0 < t < 0.95".into()));
    }
    let nodes = gauss_legendre(20);
    let l0 = |u: f64| desli0(u.exp());
    let mut f: Fun = apply(Box::new(l0), ks[0], &nodes);
    for &ki in &ks[1..] {
        let inner = f;
        f = apply(Box::new(move |u| l0(u) * inner(u)), ki, &nodes);
    }
    let value = f(t.ln());
    Ok(EvalResult {
        value: Float::with_val(53, value),
        err_bound: Float::with_val(53, 1e-8 * value.abs().max(1.0)),
        rigorous: false,
        route: Route::QuadratureOracle,
        exact: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nodes_integrate_polynomials() {
        let nodes = gauss_legendre(20);
        let s: f64 = nodes.iter().map(|(x, w)| w * x.powi(10)).sum();
        assert!((s - 2.0 / 11.0).abs() < 1e-14);
    }

    #[test]
    fn derivative_of_j_is_identity() {
        let k = IndexVector::new(vec![0]);
        let direct = desli_quadrature_oracle(&k, 0.4).unwrap().to_f64();
        assert!((direct - desli0(0.4)).abs() < 1e-15);
    }
}
