//! Command-line front end for `deszeta`: evaluation, word products and the
//! verification suites.

pub mod commands;
pub mod config;
pub mod report;
pub mod suites;
