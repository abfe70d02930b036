//! Run configuration, assembled from defaults, an optional TOML file, the
//! `DESZETA_PREC` environment variable and command-line flags.

use std::collections::BTreeMap;
use std::path::Path;

use serde::Deserialize;

use deszeta::numeval::RouteChoice;

pub const DEFAULT_PREC: u32 = 192;
pub const DEFAULT_SEED: u64 = 42;
pub const PREC_ENV: &str = "DESZETA_PREC";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize, clap::ValueEnum)]
pub enum RouteArg {
    #[value(name = "A")]
    #[serde(rename = "A")]
    A,
    #[value(name = "B")]
    #[serde(rename = "B")]
    B,
    #[value(name = "auto")]
    #[serde(rename = "auto")]
    Auto,
}

impl From<RouteArg> for RouteChoice {
    fn from(r: RouteArg) -> Self {
        match r {
            RouteArg::A => RouteChoice::A,
            RouteArg::B => RouteChoice::B,
            RouteArg::Auto => RouteChoice::Auto,
        }
    }
}

/// Everything a command needs besides its own arguments.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub prec: u32,
    /// Per-suite tolerances; suites fall back to their built-in values.
    pub tolerances: BTreeMap<String, f64>,
    /// Overrides every suite tolerance when set.
    pub tol: Option<f64>,
    pub max_depth: usize,
    /// Largest `|k_i|` in the exact-value table.
    pub max_entry: u32,
    /// Largest weight in the renormalization suite.
    pub max_weight: u32,
    pub format: Format,
    pub seed: u64,
    pub jobs: usize,
    pub route: RouteArg,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            prec: DEFAULT_PREC,
            tolerances: BTreeMap::new(),
            tol: None,
            max_depth: 3,
            max_entry: 4,
            max_weight: 4,
            format: Format::Json,
            seed: DEFAULT_SEED,
            jobs: 1,
            route: RouteArg::Auto,
        }
    }
}

/// Contents of a config file. Every field is optional.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub prec: Option<u32>,
    #[serde(default)]
    pub tolerances: BTreeMap<String, f64>,
    pub tol: Option<f64>,
    pub max_depth: Option<usize>,
    pub max_entry: Option<u32>,
    pub max_weight: Option<u32>,
    pub format: Option<Format>,
    pub seed: Option<u64>,
    pub jobs: Option<usize>,
    pub route: Option<RouteArg>,
}

impl FileConfig {
    pub fn parse(text: &str) -> Result<Self, String> {
        toml::from_str(text).map_err(|e| e.to_string())
    }

    pub fn load(path: &Path) -> Result<Self, String> {
        let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        Self::parse(&text).map_err(|e| format!("{}: {e}", path.display()))
    }
}

/// Values given on the command line.
#[derive(Clone, Debug, Default)]
pub struct FlagConfig {
    pub prec: Option<u32>,
    pub tol: Option<f64>,
    pub format: Option<Format>,
    pub seed: Option<u64>,
    pub jobs: Option<usize>,
    pub route: Option<RouteArg>,
}

impl RunConfig {
    /// Precedence: flags, then the file, then `DESZETA_PREC` (precision only), then defaults.
    pub fn resolve(file: &FileConfig, env_prec: Option<&str>, flags: &FlagConfig) -> Result<Self, String> {
        let d = RunConfig::default();
        let env_prec = match env_prec {
            Some(s) => Some(
                s.trim()
                    .parse::<u32>()
                    .map_err(|_| format!("{PREC_ENV} must be an integer, got {s:?}"))?,
            ),
            None => None,
        };
        let cfg = RunConfig {
            prec: flags.prec.or(file.prec).or(env_prec).unwrap_or(d.prec),
            tolerances: file.tolerances.clone(),
            tol: flags.tol.or(file.tol),
            max_depth: file.max_depth.unwrap_or(d.max_depth),
            max_entry: file.max_entry.unwrap_or(d.max_entry),
            max_weight: file.max_weight.unwrap_or(d.max_weight),
            format: flags.format.or(file.format).unwrap_or(d.format),
            seed: flags.seed.or(file.seed).unwrap_or(d.seed),
            jobs: flags.jobs.or(file.jobs).unwrap_or(d.jobs).max(1),
            route: flags.route.or(file.route).unwrap_or(d.route),
        };
        if cfg.prec < 64 {
            return Err(format!("precision must be at least 64 bits, got {}", cfg.prec));
        }
        Ok(cfg)
    }

    pub fn tolerance(&self, suite: &str, default: f64) -> f64 {
        self.tol
            .or_else(|| self.tolerances.get(suite).copied())
            .unwrap_or(default)
    }
}
