use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
mod output;

/// Exit statuses. Argument errors exit with 2 (clap's convention).
pub const EXIT_IO: u8 = 1;
pub const EXIT_PARSE: u8 = 3;
pub const EXIT_BUDGET: u8 = 4;
pub const EXIT_MISMATCH: u8 = 5;

#[derive(Parser, Debug)]
#[command(name = "deltaknot", version, about = "Delta-crossing and triple-crossing knot diagrams")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Output style; `json` is machine-readable.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Largest classical diagram (in crossings) the invariant engines accept.
    #[arg(long, global = true, default_value_t = deltaknot::invariants::DEFAULT_CROSSING_BUDGET,
          value_parser = positive)]
    pub budget: usize,
    /// Worker threads for parallel stages (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    pub threads: usize,
    /// More log output (repeatable).
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    pub verbose: u8,
    /// Directory holding `tb*/`, `reference/` and `tables/`.
    #[arg(long, global = true, env = "DELTAKNOT_DATA", default_value = "data")]
    pub data_dir: PathBuf,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Spd,
    Tpd,
    Dpd,
    Pd,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Which {
    Homfly,
    Jones,
    Alexander,
    All,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Validate diagram codes and print their structure.
    Parse {
        /// Code kind; inferred from the file extension when omitted.
        #[arg(long, value_enum)]
        kind: Option<Kind>,
        file: PathBuf,
    },
    /// Convert between delta, triple and classical diagrams.
    Resolve {
        #[arg(long, value_enum)]
        from: Kind,
        #[arg(long, value_enum)]
        to: Kind,
        /// Use tangle rewriting when resolving triple crossings.
        #[arg(long)]
        optimized: bool,
        file: PathBuf,
    },
    /// Find tangle patterns in triple-point shadows.
    Detect {
        #[arg(long, value_delimiter = ',', default_value = "T1,T2,T3,T4")]
        patterns: Vec<String>,
        file: PathBuf,
    },
    /// Polynomial invariants of classical diagrams.
    Invariant {
        #[arg(long, value_enum, default_value_t = Which::All)]
        which: Which,
        file: PathBuf,
    },
    /// Identify diagrams against a reference knot table.
    Identify {
        #[arg(long, value_enum)]
        kind: Option<Kind>,
        /// Reference CSV; defaults to DATA/reference/knots.csv.
        #[arg(long)]
        reference: Option<PathBuf>,
        file: PathBuf,
    },
    /// Enumerate delta diagrams over the projection data and tabulate knots.
    Tabulate(TabulateArgs),
    /// Check structural claims and tables against the data.
    Verify(VerifyArgs),
}

#[derive(Args, Debug, Clone)]
pub struct TabulateArgs {
    /// Projection directory; defaults to DATA.
    #[arg(long)]
    pub tb_dir: Option<PathBuf>,
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u8).range(1..=4))]
    pub max_n: u8,
    #[arg(long)]
    pub reference: Option<PathBuf>,
    /// Fingerprint cache file, created if absent.
    #[arg(long)]
    pub cache: Option<PathBuf>,
    #[arg(long, default_value = "out")]
    pub out: PathBuf,
}

#[derive(Args, Debug, Clone)]
#[command(group(clap::ArgGroup::new("check").required(true).multiple(true)
    .args(["theorem2", "theorem3", "table1", "table2"])))]
pub struct VerifyArgs {
    /// Tangle existence and the face identity on every knot projection in DIR.
    #[arg(long, value_name = "DIR")]
    pub theorem2: Option<PathBuf>,
    /// Crossing bounds and invariance of both triple resolutions on every
    /// role assignment over the knot projections in DIR.
    #[arg(long, value_name = "DIR")]
    pub theorem3: Option<PathBuf>,
    /// Compare the tabulation with the bundled knot list.
    #[arg(long)]
    pub table1: bool,
    /// Identify the bundled minimal diagrams and lift them to triple crossings.
    #[arg(long)]
    pub table2: bool,
    /// Directory with table1.txt and table2.txt; defaults to DATA/tables.
    #[arg(long)]
    pub tables: Option<PathBuf>,
    #[arg(long)]
    pub tb_dir: Option<PathBuf>,
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u8).range(1..=4))]
    pub max_n: u8,
    #[arg(long)]
    pub reference: Option<PathBuf>,
    #[arg(long)]
    pub cache: Option<PathBuf>,
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be at least 1".into()),
        Ok(n) => Ok(n),
        Err(e) => Err(e.to_string()),
    }
}

/// Failure classes mapped to exit statuses.
#[derive(Debug)]
pub enum Failure {
    Parse(anyhow::Error),
    Budget(anyhow::Error),
    Mismatch(String),
    Other(anyhow::Error),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Parse(_) => EXIT_PARSE,
            Failure::Budget(_) => EXIT_BUDGET,
            Failure::Mismatch(_) => EXIT_MISMATCH,
            Failure::Other(_) => EXIT_IO,
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Parse(e) => write!(f, "parse error: {e:#}"),
            Failure::Budget(e) => write!(f, "{e:#}"),
            Failure::Mismatch(m) => write!(f, "verification failed: {m}"),
            Failure::Other(e) => write!(f, "{e:#}"),
        }
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Other(e)
    }
}

pub fn existing_file(p: &Path) -> Result<(), Failure> {
    if p.is_file() {
        Ok(())
    } else {
        Err(Failure::Other(anyhow::anyhow!("{}: no such file", p.display())))
    }
}

pub fn existing_dir(p: &Path) -> Result<(), Failure> {
    if p.exists() {
        Ok(())
    } else {
        Err(Failure::Other(anyhow::anyhow!("{}: no such file or directory", p.display())))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = match cli.global.verbose {
        0 => "warn",
        1 => "info",
        2 => "debug",
        _ => "trace",
    };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).init();
    if cli.global.threads > 0 {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(cli.global.threads).build_global() {
            log::warn!("thread pool: {e}");
        }
    }
    match commands::dispatch(&cli) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(Failure::Mismatch(report)) => {
            print!("{report}");
            eprintln!("deltaknot: verification mismatch");
            ExitCode::from(EXIT_MISMATCH)
        }
        Err(e) => {
            eprintln!("deltaknot: {e}");
            ExitCode::from(e.code())
        }
    }
}
