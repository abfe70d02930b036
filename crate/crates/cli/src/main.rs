use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use deszeta::wordalg::Word;
use deszeta::IndexVector;
use deszeta_cli::commands::{cmd_eval, cmd_shuffle, cmd_verify, Outcome, EXIT_FAIL, EXIT_USAGE};
use deszeta_cli::config::{FileConfig, FlagConfig, Format, RouteArg, RunConfig, PREC_ENV};

const WORD_HELP: &str = "Word literals are bracketed exponent lists: [e1,e2,...,er] stands for \
j^e1 y j^e2 y ... j^er y, and a negative exponent is a power of d. \
A word [e1,...,er] corresponds to the index vector (er,...,e1).";

#[derive(Parser)]
#[command(name = "deszeta", version, about = "Desingularized multiple zeta values", after_help = WORD_HELP)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate at an integer point.
    Eval {
        /// Index vector, e.g. 1,1 or -1,-2.
        #[arg(short = 'k', long = "indices", allow_hyphen_values = true)]
        indices: IndexVector,
        /// Print the exact rational value.
        #[arg(long)]
        exact: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Expand the product of two words and check it numerically.
    #[command(after_help = WORD_HELP)]
    Shuffle {
        #[arg(allow_hyphen_values = true)]
        left: Word,
        #[arg(allow_hyphen_values = true)]
        right: Word,
        #[command(flatten)]
        common: Common,
    },
    /// Run verification suites.
    Verify {
        /// Suite name or "all".
        #[arg(long, default_value = "all")]
        suite: String,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args)]
struct Common {
    /// Working precision in bits (default from DESZETA_PREC, else 192).
    #[arg(long)]
    prec: Option<u32>,
    /// Tolerance overriding every suite default.
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long, value_enum)]
    route: Option<RouteArg>,
    /// Seed for randomized suites.
    #[arg(long)]
    seed: Option<u64>,
    /// Worker threads.
    #[arg(long)]
    jobs: Option<usize>,
    /// Write output here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// TOML config file; flags override its values.
    #[arg(long)]
    config: Option<PathBuf>,
}

impl Common {
    fn resolve(&self, default_format: Format) -> Result<RunConfig, String> {
        let file = match &self.config {
            Some(p) => FileConfig::load(p)?,
            None => FileConfig::default(),
        };
        let flags = FlagConfig {
            prec: self.prec,
            tol: self.tol,
            format: self.format.or(file.format).or(Some(default_format)),
            seed: self.seed,
            jobs: self.jobs,
            route: self.route,
        };
        let env = std::env::var(PREC_ENV).ok();
        RunConfig::resolve(&file, env.as_deref(), &flags)
    }
}

fn emit(out: &Outcome, path: Option<&PathBuf>) -> ExitCode {
    match path {
        Some(p) if out.code != EXIT_USAGE => {
            if let Err(e) = std::fs::write(p, &out.output) {
                eprintln!("error: {}: {e}", p.display());
                return ExitCode::from(EXIT_FAIL as u8);
            }
        }
        _ if out.output.starts_with("error:") => eprint!("{}", out.output),
        _ => print!("{}", out.output),
    }
    ExitCode::from(out.code as u8)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (common, default_format) = match &cli.command {
        Command::Eval { common, .. } | Command::Shuffle { common, .. } => (common, Format::Text),
        Command::Verify { common, .. } => (common, Format::Json),
    };
    let cfg = match common.resolve(default_format) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_USAGE as u8);
        }
    };
    let out = match &cli.command {
        Command::Eval { indices, exact, .. } => cmd_eval(indices, *exact, &cfg),
        Command::Shuffle { left, right, .. } => cmd_shuffle(left, right, &cfg),
        Command::Verify { suite, .. } => cmd_verify(suite, &cfg),
    };
    emit(&out, common.out.as_ref())
}
