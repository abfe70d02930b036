//! Exact integer/rational primitives and precision settings.
//!
//! Bernoulli numbers follow the `x/(e^x - 1)` convention, so `B_1 = -1/2`.

use std::sync::{Mutex, OnceLock};

pub use rug::{Float, Integer, Rational};

/// Working precision and truncation limits for numeric evaluation.
#[derive(Debug, Clone, PartialEq)]
pub struct PrecisionCtx {
    /// Mantissa bits for every `Float` created by the numeric layer.
    pub bits: u32,
    /// Relative tolerance for truncated series tails.
    pub tail_tol: f64,
    /// Hard cap on the number of summed terms.
    pub max_terms: u64,
}

impl PrecisionCtx {
    pub fn new(bits: u32) -> Self {
        let bits = bits.max(64);
        PrecisionCtx {
            bits,
            tail_tol: 2f64.powi(-(bits as i32 - 24).min(1000)),
            max_terms: 50_000_000,
        }
    }

    pub fn float<T>(&self, v: T) -> Float
    where
        Float: rug::Assign<T>,
    {
        Float::with_val(self.bits, v)
    }
}

impl Default for PrecisionCtx {
    fn default() -> Self {
        PrecisionCtx::new(192)
    }
}

struct BernoulliState {
    row: Vec<Rational>,
    values: Vec<Rational>,
}

fn bernoulli_state() -> &'static Mutex<BernoulliState> {
    static STATE: OnceLock<Mutex<BernoulliState>> = OnceLock::new();
    STATE.get_or_init(|| {
        Mutex::new(BernoulliState {
            row: Vec::new(),
            values: Vec::new(),
        })
    })
}

/// Bernoulli number `B_m` with `B_1 = -1/2`.
///
/// Uses the Akiyama-Tanigawa recurrence; results are memoized.
pub fn bernoulli(m: u32) -> Rational {
    let mut st = bernoulli_state().lock().unwrap();
    while st.values.len() <= m as usize {
        let n = st.values.len();
        st.row.push(Rational::from((1, n as u32 + 1)));
        for j in (1..=n).rev() {
            let diff = Rational::from(&st.row[j - 1] - &st.row[j]);
            st.row[j - 1] = diff * Integer::from(j);
        }
        // The recurrence produces B_1 = +1/2.
        let b = if n == 1 { -st.row[0].clone() } else { st.row[0].clone() };
        st.values.push(b);
    }
    st.values[m as usize].clone()
}

/// Rising factorial `(s)_k = s(s+1)...(s+k-1)`.
pub fn pochhammer(s: i64, k: u32) -> Integer {
    let mut acc = Integer::from(1);
    for i in 0..k as i64 {
        acc *= s + i;
    }
    acc
}

/// Binomial coefficient, zero outside `0 <= i <= n`.
pub fn binom(n: i64, i: i64) -> Integer {
    if n < 0 || i < 0 || i > n {
        return Integer::new();
    }
    Integer::from(Integer::binomial_u(n as u32, i as u32))
}

pub fn factorial(n: u32) -> Integer {
    Integer::from(Integer::factorial(n))
}

/// `Rational` as a `Float` at the given precision.
pub fn rat_to_float(q: &Rational, bits: u32) -> Float {
    Float::with_val(bits, q)
}
