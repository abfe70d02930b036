//! The `eval`, `shuffle` and `verify` commands. Each returns the text to
//! print and an exit code, so they can be driven from tests.

use std::fmt::Write as _;
use std::time::Instant;

use deszeta::closedform::{deszeta_nonpos_bernoulli, deszeta_nonpos_iterdiff};
use deszeta::numcore::Float;
use deszeta::numeval::{deszeta_eval, psi_eval, route_b};
use deszeta::wordalg::{word_to_index, Shuffler, Word, WordSum};
use deszeta::{IndexVector, PrecisionCtx};

use crate::config::{Format, RunConfig};
use crate::report::{Case, Report};
use crate::suites::{fmt_float, run_suite};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

pub struct Outcome {
    pub output: String,
    pub code: i32,
}

impl Outcome {
    fn new(output: String, code: i32) -> Self {
        Outcome { output, code }
    }
}

/// Exact value at `k`, when one is available: both exact routes for
/// non-positive points, otherwise a finite combination with rational value.
fn exact_value(k: &IndexVector, ctx: &PrecisionCtx) -> Result<deszeta::numcore::Rational, String> {
    if let Some(neg) = k.negated_nonpositive() {
        let a = deszeta_nonpos_bernoulli(&neg);
        let b = deszeta_nonpos_iterdiff(&neg).map_err(|e| e.to_string())?;
        if a != b {
            return Err(format!("exact routes disagree at {k}: {a} vs {b}"));
        }
        return Ok(a);
    }
    match route_b(k, ctx).map_err(|e| e.to_string())? {
        Some(v) => v.exact.ok_or_else(|| format!("no rational value known at {k}")),
        None => Err(format!("no rational value known at {k}")),
    }
}

pub fn cmd_eval(k: &IndexVector, exact: bool, cfg: &RunConfig) -> Outcome {
    let ctx = PrecisionCtx::new(cfg.prec);
    let start = Instant::now();
    let case = Case::new(k.to_string(), k.to_string());
    if exact {
        return match exact_value(k, &ctx) {
            Ok(q) => {
                let out = match cfg.format {
                    Format::Text => format!("{q}\n"),
                    f => Report::new(
                        "eval",
                        vec![case.actual(q.to_string()).route("exact").level("exact").verdict(true)],
                        start.elapsed().as_secs_f64(),
                    )
                    .render(f),
                };
                Outcome::new(out, EXIT_PASS)
            }
            Err(e) => Outcome::new(format!("error: {e}\n"), EXIT_FAIL),
        };
    }
    match deszeta_eval(k, cfg.route.into(), &ctx) {
        Ok(v) => {
            let out = match cfg.format {
                Format::Text => {
                    let mut s = String::new();
                    let _ = writeln!(s, "value     {}", fmt_float(&v.value));
                    let _ = writeln!(
                        s,
                        "err_bound {:.3e}{}",
                        v.err_bound.to_f64(),
                        if v.rigorous { "" } else { " (estimate)" }
                    );
                    let _ = writeln!(s, "route     {}", v.route);
                    if let Some(q) = &v.exact {
                        let _ = writeln!(s, "exact     {q}");
                    }
                    s
                }
                f => {
                    let mut c = case
                        .actual(v.exact.as_ref().map_or_else(|| fmt_float(&v.value), |q| q.to_string()))
                        .abs_err(v.err_bound.to_f64())
                        .route(v.route.as_str())
                        .verdict(true);
                    if v.exact.is_some() {
                        c = c.level("exact");
                    }
                    Report::new("eval", vec![c], start.elapsed().as_secs_f64()).render(f)
                }
            };
            Outcome::new(out, EXIT_PASS)
        }
        Err(e) => Outcome::new(format!("error: {e}\n"), EXIT_FAIL),
    }
}

const SHUFFLE_TOL: f64 = 1e-9;

fn value_name(w: &Word) -> String {
    match word_to_index(w) {
        Ok(k) => format!("deszeta{k}"),
        Err(_) => format!("<{w}>"),
    }
}

/// `u ⧢₀ v`, the identity it induces among values, and a residual check of
/// `psi(u ⧢₀ v) = psi(u) psi(v)` at `t = 1/2`.
pub fn cmd_shuffle(u: &Word, v: &Word, cfg: &RunConfig) -> Outcome {
    let start = Instant::now();
    let ctx = PrecisionCtx::new(cfg.prec);
    let tol = cfg.tolerance("shuffle", SHUFFLE_TOL);
    let prod = match Shuffler::new().product(u, v) {
        Ok(p) => p,
        Err(e) => return Outcome::new(format!("error: {e}\n"), EXIT_FAIL),
    };
    let mut rhs = Vec::new();
    for (w, c) in prod.terms() {
        let name = value_name(w);
        rhs.push(if *c == 1 { name } else { format!("({c})*{name}") });
    }
    let identity = format!(
        "{}*{} = {}",
        value_name(u),
        value_name(v),
        if rhs.is_empty() {
            "0".to_string()
        } else {
            rhs.join(" + ")
        }
    );
    let t = Float::with_val(cfg.prec, 0.5);
    let residual = (|| -> deszeta::Result<f64> {
        let p = psi_eval(&prod, &t, &ctx)?.value;
        let a = psi_eval(&WordSum::single(u.clone()), &t, &ctx)?.value;
        let b = psi_eval(&WordSum::single(v.clone()), &t, &ctx)?.value;
        Ok(Float::with_val(cfg.prec, p - a * b).abs().to_f64())
    })();
    let residual = match residual {
        Ok(r) => r,
        Err(e) => return Outcome::new(format!("error: {e}\n"), EXIT_FAIL),
    };
    let ok = residual <= tol;
    let out = match cfg.format {
        Format::Text => format!("{prod}\n{identity}\nresidual at t=1/2: {residual:.3e}\n"),
        f => {
            let case = Case::new(format!("{u}x{v}"), format!("{u} ⧢₀ {v}"))
                .expected(identity)
                .actual(prod.to_string())
                .abs_err(residual)
                .route("recursion")
                .verdict(ok);
            Report::new("shuffle", vec![case], start.elapsed().as_secs_f64()).render(f)
        }
    };
    Outcome::new(out, if ok { EXIT_PASS } else { EXIT_FAIL })
}

pub fn cmd_verify(suite: &str, cfg: &RunConfig) -> Outcome {
    match run_suite(suite, cfg) {
        Ok(report) => {
            let code = if report.passed() { EXIT_PASS } else { EXIT_FAIL };
            Outcome::new(report.render(cfg.format), code)
        }
        Err(e) => Outcome::new(format!("error: {e}\n"), EXIT_USAGE),
    }
}
