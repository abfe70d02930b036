//! Verification suites. Each suite turns a [`RunConfig`] into a [`Report`].

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use rug::ops::Pow;

use deszeta::closedform::{deszeta_nonpos_bernoulli, deszeta_nonpos_iterdiff, multi_indices};
use deszeta::licomb::{dr_bound, pochhammer_sum_sides, zfull, zq};
use deszeta::numcore::{binom, Float, Integer, Rational};
use deszeta::numeval::{
    deszeta_eval, deszeta_trailing_reduction, licomb_eval, pole_limit_check, psi_eval, route_a, EvalResult,
    RouteAOptions, RouteChoice,
};
use deszeta::renorm::{check_f_generating, phi_eval_sum, BirkhoffPair, CharacterSpec};
use deszeta::series::{expand_g, TruncatedLaurent};
use deszeta::wordalg::{
    closed_shuffle_depth11, closed_shuffle_depth21, reduced_coproduct, word_to_index, EqualityLevel, Shuffler, Word,
    WordSum,
};
use deszeta::{IndexVector, PrecisionCtx, Result as CoreResult};

use crate::config::RunConfig;
use crate::report::{Case, Report};

/// Suite names with one-line descriptions, in run order.
pub const SUITES: &[(&str, &str)] = &[
    ("exact-values", "values at non-positive integers by both exact routes"),
    ("route-a-anchors", "extrapolated limits at (1) and (1,1)"),
    ("depth1-positive", "depth one at k = 2..6 against (1-k) zeta(k)"),
    ("shuffle-depth1", "products of two depth-one values"),
    ("homomorphism-fuzz", "psi(u ⧢₀ v) = psi(u) psi(v) on random words"),
    ("closed-forms", "recursion against the closed-form products"),
    ("symbolic-calculus", "D[Z(k)] = Z(k'), the Z_q recurrence and vanishing"),
    ("product-law", "Z(k,0) = Z(0) Z(k) at t = 1/2"),
    (
        "renormalization",
        "Birkhoff values, pole independence, generating identities",
    ),
    ("pochhammer-sum", "alternating Pochhammer sum on random triples"),
    ("pole-limit", "(s-1) zeta_2(3, s) -> zeta(3) as s -> 1"),
    (
        "cross-route",
        "value at (1,-1) by recurrence, extrapolation and a word identity",
    ),
];

pub fn suite_names() -> Vec<&'static str> {
    SUITES.iter().map(|(n, _)| *n).collect()
}

/// Runs one suite, or every suite for `"all"`. Unknown names are an error.
pub fn run_suite(name: &str, cfg: &RunConfig) -> std::result::Result<Report, String> {
    let start = Instant::now();
    let cases = if name == "all" {
        let mut all = Vec::new();
        for (n, _) in SUITES {
            all.extend(suite_cases(n, cfg)?.into_iter().map(|mut c| {
                c.id = format!("{n}/{}", c.id);
                c
            }));
        }
        all
    } else {
        suite_cases(name, cfg)?
    };
    Ok(Report::new(name, cases, start.elapsed().as_secs_f64()))
}

fn suite_cases(name: &str, cfg: &RunConfig) -> std::result::Result<Vec<Case>, String> {
    let cases = match name {
        "exact-values" => exact_values(cfg),
        "route-a-anchors" => route_a_anchors(cfg),
        "depth1-positive" => depth1_positive(cfg),
        "shuffle-depth1" => shuffle_depth1(cfg),
        "homomorphism-fuzz" => homomorphism_fuzz(cfg),
        "closed-forms" => closed_forms(cfg),
        "symbolic-calculus" => symbolic_calculus(cfg),
        "product-law" => product_law(cfg),
        "renormalization" => renormalization(cfg),
        "pochhammer-sum" => pochhammer_sum(cfg),
        "pole-limit" => pole_limit(cfg),
        "cross-route" => cross_route(cfg),
        _ => {
            return Err(format!(
                "unknown suite {name:?}; expected one of: all, {}",
                suite_names().join(", ")
            ))
        }
    };
    Ok(cases)
}

fn par_cases<T: Sync>(cfg: &RunConfig, items: &[T], f: impl Fn(&T) -> Case + Sync) -> Vec<Case> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs)
        .build()
        .expect("thread pool");
    pool.install(|| items.par_iter().map(&f).collect())
}

pub fn fmt_float(x: &Float) -> String {
    x.to_string_radix(10, Some(20))
}

fn ctx(cfg: &RunConfig) -> PrecisionCtx {
    PrecisionCtx::new(cfg.prec)
}

fn iv(k: &[i64]) -> IndexVector {
    IndexVector::new(k.to_vec())
}

fn diff(a: &Float, b: &Float) -> f64 {
    Float::with_val(a.prec().max(b.prec()), a - b).abs().to_f64()
}

fn rel_diff(a: &Float, b: &Float) -> f64 {
    diff(a, b) / b.to_f64().abs().max(f64::MIN_POSITIVE)
}

/// All integer vectors of length `r` with entries in `lo..=hi`.
fn grid(r: usize, lo: i64, hi: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..r {
        out = out
            .into_iter()
            .flat_map(|p: Vec<i64>| {
                (lo..=hi).map(move |x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
    }
    out
}

fn fmt_k(k: &[i64]) -> String {
    iv(k).to_string()
}

/// Sortable id for an index vector: depth first, then entries.
fn k_id(k: &[i64]) -> String {
    let parts: Vec<String> = k.iter().map(|x| format!("{x:+}")).collect();
    format!("r{}:{}", k.len(), parts.join(","))
}

fn exact_values(cfg: &RunConfig) -> Vec<Case> {
    let anchors: [(&[u32], (i64, i64)); 3] = [(&[0], (-1, 2)), (&[1], (-1, 6)), (&[0, 0], (1, 4))];
    let mut points: Vec<Vec<u32>> = Vec::new();
    for r in 1..=cfg.max_depth {
        for k in grid(r, 0, cfg.max_entry as i64) {
            points.push(k.iter().map(|&x| x as u32).collect());
        }
    }
    par_cases(cfg, &points, |k| {
        let neg: Vec<i64> = k.iter().map(|&x| -(x as i64)).collect();
        let inputs = fmt_k(&neg);
        let a = deszeta_nonpos_bernoulli(k);
        let b = match deszeta_nonpos_iterdiff(k) {
            Ok(b) => b,
            Err(e) => return Case::error(k_id(&neg), inputs, e),
        };
        let anchor = anchors
            .iter()
            .find(|(p, _)| *p == k.as_slice())
            .map(|(_, q)| Rational::from(*q));
        let expected = anchor.clone().unwrap_or_else(|| b.clone());
        let ok = a == b && anchor.is_none_or(|q| q == a);
        let err = Rational::from(&a - &expected).abs().to_f64();
        Case::new(k_id(&neg), inputs)
            .expected(expected.to_string())
            .actual(format!("bernoulli {a}; iterdiff {b}"))
            .abs_err(err)
            .route("exact")
            .level("exact")
            .verdict(ok)
    })
}

fn numeric_case(id: String, inputs: String, expected: &Float, got: CoreResult<EvalResult>, tol: f64) -> Case {
    match got {
        Ok(v) => {
            let err = diff(&v.value, expected);
            Case::new(id, inputs)
                .expected(fmt_float(expected))
                .actual(fmt_float(&v.value))
                .abs_err(err)
                .route(v.route.as_str())
                .verdict(err <= tol)
        }
        Err(e) => Case::error(id, inputs, e),
    }
}

fn route_a_anchors(cfg: &RunConfig) -> Vec<Case> {
    let tol = cfg.tolerance("route-a-anchors", 1e-6);
    let items: Vec<(Vec<i64>, (i64, i64))> = vec![(vec![1], (-1, 1)), (vec![1, 1], (1, 2))];
    let c = ctx(cfg);
    par_cases(cfg, &items, |(k, q)| {
        let expected = Float::with_val(cfg.prec, &Rational::from(*q));
        let got = route_a(&iv(k), &RouteAOptions::default(), &c);
        numeric_case(k_id(k), fmt_k(k), &expected, got, tol)
    })
}

/// `zeta(n)` for `n = 2..6` from `pi` and fixed decimal constants.
fn zeta_reference(n: i64, bits: u32) -> Float {
    let pi = Float::with_val(bits, rug::float::Constant::Pi);
    let parse = |s: &str| Float::with_val(bits, Float::parse(s).expect("constant"));
    match n {
        2 => Float::with_val(bits, pi.square_ref()) / 6,
        3 => parse("1.2020569031595942853997381615114499907649862923405"),
        4 => Float::with_val(bits, (&pi).pow(4u32)) / 90,
        5 => parse("1.0369277551433699263313654864570341680570809195019"),
        6 => Float::with_val(bits, (&pi).pow(6u32)) / 945,
        _ => unreachable!(),
    }
}

fn depth1_positive(cfg: &RunConfig) -> Vec<Case> {
    let tol = cfg.tolerance("depth1-positive", 1e-10);
    let c = ctx(cfg);
    let ks: Vec<i64> = (2..=6).collect();
    par_cases(cfg, &ks, |&k| {
        let expected = zeta_reference(k, cfg.prec) * (1 - k);
        let got = deszeta_eval(&iv(&[k]), cfg.route.into(), &c);
        numeric_case(k_id(&[k]), fmt_k(&[k]), &expected, got, tol)
    })
}

fn value(k: &[i64], cfg: &RunConfig, c: &PrecisionCtx) -> CoreResult<EvalResult> {
    deszeta_eval(&iv(k), cfg.route.into(), c)
}

fn shuffle_depth1(cfg: &RunConfig) -> Vec<Case> {
    let tol = cfg.tolerance("shuffle-depth1", 1e-6);
    let c = ctx(cfg);
    let pairs: Vec<(i64, i64)> = vec![(1, 1), (1, 2), (2, 2), (2, 3), (3, 3)];
    par_cases(cfg, &pairs, |&(n, m)| {
        let id = format!("({n},{m})");
        let run = || -> CoreResult<(Float, Float, Vec<&'static str>)> {
            let mut routes = Vec::new();
            let vn = value(&[n], cfg, &c)?;
            let vm = value(&[m], cfg, &c)?;
            routes.push(vn.route.as_str());
            routes.push(vm.route.as_str());
            let lhs = Float::with_val(cfg.prec, &vn.value * &vm.value);
            let mut rhs = Float::new(cfg.prec);
            for j in 1..n + m {
                let coef = binom(j - 1, n - 1) + binom(j - 1, m - 1);
                if coef == 0 {
                    continue;
                }
                let v = value(&[n + m - j, j], cfg, &c)?;
                routes.push(v.route.as_str());
                rhs += Float::with_val(cfg.prec, &v.value * &coef);
            }
            Ok((lhs, rhs, routes))
        };
        match run() {
            Ok((lhs, rhs, mut routes)) => {
                routes.sort_unstable();
                routes.dedup();
                let err = diff(&lhs, &rhs);
                Case::new(id, format!("n={n}, m={m}"))
                    .expected(fmt_float(&lhs))
                    .actual(fmt_float(&rhs))
                    .abs_err(err)
                    .route(routes.join("+"))
                    .verdict(err <= tol)
            }
            Err(e) => Case::error(id, format!("n={n}, m={m}"), e),
        }
    })
}

const FUZZ_PAIRS: usize = 50;

fn random_word(rng: &mut ChaCha8Rng) -> Word {
    let depth = rng.gen_range(1..=2);
    Word::new((0..depth).map(|_| rng.gen_range(-3i64..=3)).collect())
}

fn homomorphism_fuzz(cfg: &RunConfig) -> Vec<Case> {
    let tol = cfg.tolerance("homomorphism-fuzz", 1e-9);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let pairs: Vec<(usize, Word, Word)> = (0..FUZZ_PAIRS)
        .map(|i| (i, random_word(&mut rng), random_word(&mut rng)))
        .collect();
    let c = ctx(cfg);
    par_cases(cfg, &pairs, |(i, u, v)| {
        let id = format!("pair-{i:02}");
        let inputs = format!("{u} x {v}");
        let run = || -> CoreResult<(WordSum, f64, f64, String, String)> {
            let p = Shuffler::new().product(u, v)?;
            let (mut worst, mut worst_abs) = (0.0f64, 0.0f64);
            let (mut exp_s, mut act_s) = (Vec::new(), Vec::new());
            for t in [0.3, 0.6] {
                let tf = Float::with_val(cfg.prec, t);
                let lhs = psi_eval(&p, &tf, &c)?.value;
                let a = psi_eval(&WordSum::single(u.clone()), &tf, &c)?.value;
                let b = psi_eval(&WordSum::single(v.clone()), &tf, &c)?.value;
                let rhs = Float::with_val(cfg.prec, &a * &b);
                worst = worst.max(rel_diff(&lhs, &rhs));
                worst_abs = worst_abs.max(diff(&lhs, &rhs));
                exp_s.push(format!("t={t}: {}", fmt_float(&rhs)));
                act_s.push(format!("t={t}: {}", fmt_float(&lhs)));
            }
            Ok((p, worst, worst_abs, exp_s.join("; "), act_s.join("; ")))
        };
        match run() {
            Ok((p, worst, worst_abs, e, a)) => Case::new(id, format!("{inputs} = {p}"))
                .expected(e)
                .actual(a)
                .abs_err(worst_abs)
                .route("series")
                .verdict(worst <= tol),
            Err(e) => Case::error(id, inputs, e),
        }
    })
}

/// Raw equality, else agreement of `psi` at `t = 0.3` and `0.6` to relative
/// `tol`. Also returns the largest absolute difference seen.
pub fn compare_word_sums(a: &WordSum, b: &WordSum, tol: f64, c: &PrecisionCtx) -> CoreResult<(EqualityLevel, f64)> {
    if a == b {
        return Ok((EqualityLevel::Raw, 0.0));
    }
    let (mut worst, mut worst_abs) = (0.0f64, 0.0f64);
    for t in [0.3, 0.6] {
        let tf = Float::with_val(c.bits, t);
        let x = psi_eval(a, &tf, c)?.value;
        let y = psi_eval(b, &tf, c)?.value;
        worst = worst.max(rel_diff(&x, &y));
        worst_abs = worst_abs.max(diff(&x, &y));
    }
    let level = if worst <= tol {
        EqualityLevel::PsiNumeric
    } else {
        EqualityLevel::Failed
    };
    Ok((level, worst_abs))
}

fn closed_forms(cfg: &RunConfig) -> Vec<Case> {
    let tol = cfg.tolerance("closed-forms", 1e-9);
    let mut items: Vec<Vec<u32>> = Vec::new();
    for k in 1..=3 {
        for l in 1..=3 {
            items.push(vec![k, l]);
            for m in 1..=3 {
                items.push(vec![k, l, m]);
            }
        }
    }
    let c = ctx(cfg);
    par_cases(cfg, &items, |x| {
        let (u, v, closed) = if x.len() == 2 {
            (
                Word::new(vec![-(x[0] as i64)]),
                Word::new(vec![x[1] as i64]),
                closed_shuffle_depth11(x[0], x[1]),
            )
        } else {
            (
                Word::new(vec![-(x[0] as i64), x[1] as i64]),
                Word::new(vec![x[2] as i64]),
                closed_shuffle_depth21(x[0], x[1], x[2]),
            )
        };
        let id = format!(
            "d{}:{}",
            if x.len() == 2 { "11" } else { "21" },
            x.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
        );
        let inputs = format!("{u} x {v}");
        let run = || -> CoreResult<(WordSum, EqualityLevel, f64)> {
            let rec = Shuffler::new().product(&u, &v)?;
            let (level, err) = compare_word_sums(&rec, &closed, tol, &c)?;
            Ok((rec, level, err))
        };
        match run() {
            Ok((rec, level, err)) => Case::new(id, inputs)
                .expected(closed.to_string())
                .actual(rec.to_string())
                .abs_err(err)
                .route("recursion")
                .level(level.as_str())
                .verdict(level != EqualityLevel::Failed),
            Err(e) => Case::error(id, inputs, e),
        }
    })
}

fn symbolic_calculus(cfg: &RunConfig) -> Vec<Case> {
    let mut cases = vec![];
    for (r, want) in [(1usize, 1u32), (2, 2)] {
        let got = dr_bound(r);
        let case = Case::new(format!("bound:d{r}"), format!("r={r}")).expected(want.to_string());
        cases.push(match got {
            Ok(d) => case.actual(d.to_string()).level("exact").verdict(d == want),
            Err(e) => Case::error(format!("bound:d{r}"), format!("r={r}"), e),
        });
    }
    let mut points = Vec::new();
    for r in 1..=3 {
        points.extend(grid(r, -3, 3));
    }
    cases.extend(par_cases(cfg, &points, |k| {
        let id = format!("calc:{}", k_id(k));
        let run = || -> CoreResult<Vec<String>> {
            let kv = iv(k);
            let mut bad = Vec::new();
            if zfull(&kv)?.d() != zfull(&kv.prime())? {
                bad.push("D[Z(k)] != Z(k')".to_string());
            }
            let d = dr_bound(kv.depth())?;
            for q in 1..=d + 1 {
                let rhs = zq(&kv, q - 1)?.d().sub(&zq(&kv.prime(), q - 1)?);
                if zq(&kv, q)? != rhs {
                    bad.push(format!("recurrence at q={q}"));
                }
            }
            for q in [d + 1, d + 2] {
                if !zq(&kv, q)?.is_empty() {
                    bad.push(format!("Z_{q} nonzero"));
                }
            }
            Ok(bad)
        };
        match run() {
            Ok(bad) => Case::new(id, fmt_k(k))
                .expected("derivative, recurrence and vanishing hold")
                .actual(if bad.is_empty() {
                    "all hold".to_string()
                } else {
                    bad.join("; ")
                })
                .route("symbolic")
                .level("exact")
                .verdict(bad.is_empty()),
            Err(e) => Case::error(id, fmt_k(k), e),
        }
    }));
    cases
}

fn product_law(cfg: &RunConfig) -> Vec<Case> {
    let tol = cfg.tolerance("product-law", 1e-10);
    let mut points = grid(1, -2, 2);
    points.extend(grid(2, -2, 2));
    let c = ctx(cfg);
    let t = Float::with_val(cfg.prec, 0.5);
    par_cases(cfg, &points, |k| {
        let run = || -> CoreResult<(Float, Float)> {
            let mut ext = k.clone();
            ext.push(0);
            let lhs = licomb_eval(&zfull(&iv(&ext))?, &t, &c)?.value;
            let z0 = licomb_eval(&zfull(&iv(&[0]))?, &t, &c)?.value;
            let zk = licomb_eval(&zfull(&iv(k))?, &t, &c)?.value;
            Ok((lhs, Float::with_val(cfg.prec, &z0 * &zk)))
        };
        match run() {
            Ok((lhs, rhs)) => {
                let err = diff(&lhs, &rhs);
                Case::new(k_id(k), fmt_k(k))
                    .expected(fmt_float(&rhs))
                    .actual(fmt_float(&lhs))
                    .abs_err(err)
                    .route("series")
                    .verdict(err <= tol)
            }
            Err(e) => Case::error(k_id(k), fmt_k(k), e),
        }
    })
}

const RENORM_ORDER: u32 = 12;

fn g_spec() -> CharacterSpec {
    CharacterSpec::new(expand_g(RENORM_ORDER))
}

/// `g + c z^e` with room for the poles produced at depth 3.
fn pole_spec(c: i64, e: i32) -> CharacterSpec {
    let f = expand_g(RENORM_ORDER)
        .add(&TruncatedLaurent::monomial(Rational::from(c), e, RENORM_ORDER as i32))
        .with_pole_cap(32);
    CharacterSpec::new(f)
}

enum RenormItem {
    Value(Vec<u32>),
    Generating(&'static str, usize),
    Coproduct(Word),
}

fn renormalization(cfg: &RunConfig) -> Vec<Case> {
    let mut items = Vec::new();
    for r in 1..=cfg.max_depth {
        for k in multi_indices(r, cfg.max_weight) {
            items.push(RenormItem::Value(k));
        }
    }
    for r in 1..=3 {
        items.push(RenormItem::Generating("g", r));
        items.push(RenormItem::Generating("z^-2+g", r));
    }
    for r in 2..=3usize {
        for k in multi_indices(r, 4) {
            items.push(RenormItem::Coproduct(Word::from_d_exps(&k)));
        }
    }
    par_cases(cfg, &items, |item| match item {
        RenormItem::Value(k) => {
            let neg: Vec<i64> = k.iter().map(|&x| -(x as i64)).collect();
            let id = format!("value:{}", k_id(&neg));
            let run = || -> CoreResult<(Rational, Rational)> {
                let (g, p) = (g_spec(), pole_spec(1, -2));
                let a = BirkhoffPair::new(&g).f_value(k)?;
                let b = BirkhoffPair::new(&p).f_value(k)?;
                Ok((a, b))
            };
            match run() {
                Ok((a, b)) => {
                    let exact = deszeta_nonpos_bernoulli(k);
                    Case::new(id, format!("{} with f = g and f = z^-2 + g", fmt_k(&neg)))
                        .expected(exact.to_string())
                        .actual(format!("{a}; {b}"))
                        .abs_err(Rational::from(&a - &exact).abs().to_f64())
                        .route("birkhoff")
                        .level("exact")
                        .verdict(a == exact && b == exact)
                }
                Err(e) => Case::error(id, fmt_k(&neg), e),
            }
        }
        RenormItem::Generating(name, r) => {
            let id = format!("generating:{name}:r{r}");
            let spec = if *name == "g" { g_spec() } else { pole_spec(1, -2) };
            match check_f_generating(*r, &spec, 6) {
                Ok(gc) => Case::new(id, format!("f = {name}, depth {r}, order 6"))
                    .expected("all coefficients equal")
                    .actual(match &gc.first_discrepancy {
                        None => format!("{} coefficients equal", gc.compared),
                        Some((k, a, b)) => format!("differs at {k:?}: {a} vs {b}"),
                    })
                    .route("birkhoff")
                    .level("exact")
                    .verdict(gc.ok),
                Err(e) => Case::error(id, format!("f = {name}, depth {r}"), e),
            }
        }
        RenormItem::Coproduct(w) => {
            let id = format!("coproduct:{w}");
            let run = || -> CoreResult<(TruncatedLaurent, TruncatedLaurent)> {
                let spec = pole_spec(1, -1);
                let lhs = WordSum::term(w.clone(), Rational::from((1i64 << w.depth()) - 2));
                let rhs = reduced_coproduct(w)?.shuffle()?;
                Ok((phi_eval_sum(&lhs, &spec)?, phi_eval_sum(&rhs, &spec)?))
            };
            match run() {
                Ok((l, r)) => Case::new(id, format!("{} under f = 1/z + g", w.to_letters()))
                    .expected(l.to_string())
                    .actual(r.to_string())
                    .route("character")
                    .level("exact")
                    .verdict(l.agrees_with(&r)),
                Err(e) => Case::error(id, w.to_string(), e),
            }
        }
    })
}

const SUM_TRIPLES: usize = 200;

fn pochhammer_sum(cfg: &RunConfig) -> Vec<Case> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let triples: Vec<(usize, u32, u32, i64)> = (0..SUM_TRIPLES)
        .map(|i| (i, rng.gen_range(0..=6), rng.gen_range(0..=6), rng.gen_range(-10..=10)))
        .collect();
    par_cases(cfg, &triples, |&(i, l, q, s)| {
        let (a, b) = pochhammer_sum_sides(s, l, q);
        Case::new(format!("triple-{i:03}"), format!("l={l}, q={q}, s={s}"))
            .expected(b.to_string())
            .actual(a.to_string())
            .abs_err(Integer::from(&a - &b).abs().to_f64())
            .route("exact")
            .level("exact")
            .verdict(a == b)
    })
}

fn pole_limit(cfg: &RunConfig) -> Vec<Case> {
    let tol = cfg.tolerance("pole-limit", 1e-3);
    let eps = Rational::from((1, 10_000));
    let inputs = "n=3, s=1+1e-4".to_string();
    match pole_limit_check(3, &eps, &ctx(cfg)) {
        Ok(v) => {
            let err = v.value.clone().abs().to_f64();
            vec![Case::new("n3", inputs)
                .expected("0")
                .actual(fmt_float(&v.value))
                .abs_err(err)
                .route(v.route.as_str())
                .verdict(err <= tol)]
        }
        Err(e) => vec![Case::error("n3", inputs, e)],
    }
}

fn cross_route(cfg: &RunConfig) -> Vec<Case> {
    let tol = cfg.tolerance("cross-route", 1e-6);
    let c = ctx(cfg);
    let k = [1i64, -1];
    let exact = Rational::from((5, 12));
    let expected = Float::with_val(cfg.prec, &exact);
    let items = ["extrapolation", "recurrence", "word-identity"];
    par_cases(cfg, &items, |&which| match which {
        "recurrence" => match deszeta_trailing_reduction(&iv(&k), &c) {
            Ok(v) => Case::new(which, fmt_k(&k))
                .expected(exact.to_string())
                .actual(v.exact.as_ref().map_or_else(|| fmt_float(&v.value), |q| q.to_string()))
                .abs_err(diff(&v.value, &expected))
                .route(v.route.as_str())
                .level("exact")
                .verdict(v.exact.as_ref() == Some(&exact)),
            Err(e) => Case::error(which, fmt_k(&k), e),
        },
        "extrapolation" => numeric_case(
            which.to_string(),
            fmt_k(&k),
            &expected,
            route_a(&iv(&k), &RouteAOptions::default(), &c),
            tol,
        ),
        _ => numeric_case(
            which.to_string(),
            "dy ⧢₀ jy".to_string(),
            &expected,
            word_identity_value(&Word::new(vec![-1]), &Word::new(vec![1]), &Word::new(vec![-1, 1]), &c),
            tol,
        ),
    })
}

/// Solves `value(u) value(v) = sum c_w value(w)` for the value of `target`,
/// with every other value taken from the extrapolated limit.
pub fn word_identity_value(u: &Word, v: &Word, target: &Word, c: &PrecisionCtx) -> CoreResult<EvalResult> {
    let bits = c.bits;
    let lim = |w: &Word| -> CoreResult<EvalResult> {
        let k = word_to_index(w)?;
        match k.negated_nonpositive() {
            Some(_) => deszeta_eval(&k, RouteChoice::Auto, c),
            None => route_a(&k, &RouteAOptions::default(), c),
        }
    };
    let a = lim(u)?;
    let b = lim(v)?;
    let mut acc = Float::with_val(bits, &a.value * &b.value);
    let mut err = Float::with_val(bits, a.value.abs_ref()) * &b.err_bound
        + Float::with_val(bits, b.value.abs_ref()) * &a.err_bound;
    let prod = Shuffler::new().product(u, v)?;
    let ct = prod.coeff(target);
    if ct == 0 {
        return Err(deszeta::Error::Domain(format!("{target} does not occur in {prod}")));
    }
    for (w, cw) in prod.terms().filter(|(w, _)| *w != target) {
        let x = lim(w)?;
        let cf = Float::with_val(bits, cw);
        acc -= Float::with_val(bits, &cf * &x.value);
        err += Float::with_val(bits, cf.abs_ref()) * &x.err_bound;
    }
    let ctf = Float::with_val(bits, &ct);
    Ok(EvalResult {
        value: acc / &ctf,
        err_bound: err / ctf.abs(),
        rigorous: false,
        route: deszeta::numeval::Route::ExtrapolationA,
        exact: None,
    })
}
