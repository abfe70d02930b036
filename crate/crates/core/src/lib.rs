//! Desingularized multiple zeta values.
//!
//! - [`numcore`]: Bernoulli numbers, Pochhammer symbols, binomials, precision settings
//! - [`series`]: truncated Laurent and multivariate series, the generating function `g`
//! - [`wordalg`]: `j`/`d`/`y` words, the product ⧢₀, the reduced coproduct
//! - [`closedform`]: coefficient tables of `G_r` and exact values at non-positive integers
//! - [`renorm`]: Birkhoff decomposition of characters and renormalized values
//! - [`licomb`]: closed forms as combinations of `(-log t)^q Li_w(t)`
//! - [`numeval`]: polylogarithms, multiple zeta values, limits `t -> 1`

pub mod closedform;
pub mod error;
pub mod licomb;
pub mod numcore;
pub mod numeval;
pub mod renorm;
pub mod series;
pub mod wordalg;

pub use closedform::IndexVector;
pub use error::{Error, Result};
pub use numcore::PrecisionCtx;
