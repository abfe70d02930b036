//! Arbitrary-precision evaluation: polylogarithms, multiple zeta values,
//! the desingularized values at positive and mixed arguments, and a
//! quadrature oracle for the polylogarithm side.

mod deszeta;
mod li;
mod mzv;
mod quadrature;

pub use deszeta::{deszeta_eval, deszeta_trailing_reduction, pole_limit_check, route_a, route_b, RouteAOptions};
pub use li::{li_eval, li_eval_many, licomb_eval, psi_eval};
pub use mzv::{in_domain, mzv_eval, mzv_eval_real, zeta_int};
pub use quadrature::{desli0, desli_quadrature_oracle};

use std::fmt;

use crate::numcore::{Float, Rational};

/// Which algorithm produced a value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Route {
    Exact,
    Series,
    ExtrapolationA,
    CombinationB,
    Recurrence,
    QuadratureOracle,
}

impl Route {
    pub fn as_str(&self) -> &'static str {
        match self {
            Route::Exact => "exact",
            Route::Series => "series",
            Route::ExtrapolationA => "extrapolation-A",
            Route::CombinationB => "combination-B",
            Route::Recurrence => "recurrence",
            Route::QuadratureOracle => "quadrature-oracle",
        }
    }
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Requested evaluation route for positive or mixed indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RouteChoice {
    Auto,
    A,
    B,
}

/// A numeric value with an error estimate.
#[derive(Clone, Debug)]
pub struct EvalResult {
    pub value: Float,
    pub err_bound: Float,
    /// True when `err_bound` is a proven bound rather than an estimate.
    pub rigorous: bool,
    pub route: Route,
    pub exact: Option<Rational>,
}

impl EvalResult {
    pub fn exact(q: Rational, bits: u32) -> Self {
        EvalResult {
            value: Float::with_val(bits, &q),
            err_bound: Float::new(bits),
            rigorous: true,
            route: Route::Exact,
            exact: Some(q),
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.value.to_f64()
    }
}
