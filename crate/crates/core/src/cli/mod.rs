//! The `powfrac` command line.
//!
//! Every subcommand validates its arguments, runs one library operation and
//! writes a report to stdout (or `--output`). JSON reports carry
//! `"schema": 1` and an `elapsed_ms` timing field; apart from that field a
//! rerun with the same arguments produces the same bytes. A one-line summary
//! goes to stderr.
//!
//! Exit codes: 0 success, 2 invalid arguments, 3 resource cap refused,
//! 1 anything else.

mod commands;
mod report;

use std::ffi::OsString;
use std::io::Write;
use std::str::FromStr;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::Error;
use crate::fraccore::ExactRational;
use crate::paircount::{CountMethod, Metric, RangeConvention, DEFAULT_MAX_POINTS};

pub use report::Report;

#[derive(Parser, Debug)]
#[command(name = "powfrac", version, about = "Spacing of fractions u/n^k, exponential sums and large-sieve constants")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Report format [default: csv for `bounds` and `sharpness-study`, json otherwise]
    #[arg(long, value_enum, global = true)]
    pub format: Option<Format>,

    /// Write the report to this file instead of stdout
    #[arg(long, global = true, value_name = "PATH")]
    pub output: Option<std::path::PathBuf>,

    /// Seed for every random draw (unit vectors, coefficient tables)
    #[arg(long, global = true, default_value_t = 42)]
    pub seed: u64,

    /// Cap on points materialized by a count, and on P*M matrix entries
    #[arg(long, global = true, env = "POWFRAC_MAX_POINTS", default_value_t = DEFAULT_MAX_POINTS)]
    pub max_points: u128,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// A rational given as `p/q`; decimals and bare integers are refused so
/// that no value is silently rounded.
#[derive(Clone, Debug, PartialEq)]
pub struct Rational(pub ExactRational);

impl FromStr for Rational {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        ExactRational::from_str(s).map(Rational).map_err(|e| e.to_string())
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum MetricArg {
    Line,
    Circle,
}

impl From<MetricArg> for Metric {
    fn from(m: MetricArg) -> Self {
        match m {
            MetricArg::Line => Metric::Line,
            MetricArg::Circle => Metric::Circle,
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Sweep,
    Oracle,
}

impl From<MethodArg> for CountMethod {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Sweep => CountMethod::Sweep,
            MethodArg::Oracle => CountMethod::Oracle,
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum ConventionArg {
    HalfOpen,
    Closed,
}

impl From<ConventionArg> for RangeConvention {
    fn from(c: ConventionArg) -> Self {
        match c {
            ConventionArg::HalfOpen => RangeConvention::HalfOpen,
            ConventionArg::Closed => RangeConvention::Closed,
        }
    }
}

/// Parameters of the monomial phase `(y/alpha)(x/N)^alpha` on `(N, eta N)`.
#[derive(Args, Debug, Clone)]
pub struct PhaseArgs {
    /// Exponent alpha (real, nonzero)
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: f64,
    /// Amplitude y (real, >= 0)
    #[arg(long)]
    pub y: f64,
    /// Scale N of the summation range (real, > 0)
    #[arg(long)]
    pub n: f64,
    /// Range ratio eta; the sum runs over N < n < eta N (real, > 1)
    #[arg(long, default_value_t = 2.0)]
    pub eta: f64,
}

/// The window `K < m <= K + M` over moduli `n^k`, `n <= N`.
#[derive(Args, Debug, Clone)]
pub struct SieveArgs {
    /// Exponent k of the moduli n^k (integer >= 1)
    #[arg(long)]
    pub k: u32,
    /// Largest base N (integer >= 1)
    #[arg(long)]
    pub n: u64,
    /// Window length M (integer >= 1)
    #[arg(long)]
    pub m: u64,
    /// Window offset K (integer >= 0)
    #[arg(long = "offset", default_value_t = 0)]
    pub offset: u64,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List the tuples (u, n) with 1 <= u <= n^k, n <= N
    Enumerate {
        /// Exponent k (integer >= 1)
        #[arg(long)]
        k: u32,
        /// Largest base N (integer >= 1)
        #[arg(long)]
        n_max: u64,
        /// Keep only gcd(u, n) = 1
        #[arg(long, default_value_t = true, action = clap::ArgAction::Set)]
        coprime: bool,
        /// Order by value, ties by (n, u)
        #[arg(long, default_value_t = true, action = clap::ArgAction::Set)]
        sorted: bool,
    },
    /// Count ordered pairs with |u1/n1^k - u2/n2^k| <= 1/Y
    Pairs {
        /// Exponent k (integer >= 1)
        #[arg(long)]
        k: u32,
        /// Largest base N (integer >= 1)
        #[arg(long)]
        n_max: u64,
        /// Scale Y as p/q (rational > 0); pairs lie within 1/Y
        #[arg(long)]
        y: Rational,
        /// Keep only gcd(u, n) = 1
        #[arg(long, default_value_t = false, action = clap::ArgAction::Set)]
        coprime: bool,
        /// Distance on the real line or on R/Z
        #[arg(long, value_enum, default_value_t = MetricArg::Line)]
        metric: MetricArg,
        /// Sorted sweep, or the quadratic all-pairs oracle
        #[arg(long, value_enum, default_value_t = MethodArg::Sweep)]
        method: MethodArg,
    },
    /// Compare a mixed dyadic block count with 3 sqrt(J1 J2)
    Blocks {
        /// Exponent k (integer >= 1)
        #[arg(long)]
        k: u32,
        /// First numerator block start U1; u1 runs over [U1, 2U1)
        #[arg(long)]
        u1: u64,
        /// First base block start N1; n1 runs over [N1, 2N1)
        #[arg(long)]
        n1: u64,
        /// Second numerator block start U2
        #[arg(long)]
        u2: u64,
        /// Second base block start N2
        #[arg(long)]
        n2: u64,
        /// Scale Y as p/q (rational > 0)
        #[arg(long)]
        y: Rational,
        /// Blocks [X, 2X) or [X, 2X]
        #[arg(long, value_enum, default_value_t = ConventionArg::HalfOpen)]
        convention: ConventionArg,
    },
    /// Count points of the set within circle distance 1/Y of x
    Window {
        /// Exponent k (integer >= 1)
        #[arg(long)]
        k: u32,
        /// Largest base N (integer >= 1)
        #[arg(long)]
        n_max: u64,
        /// Centre x as p/q (rational, taken mod 1)
        #[arg(long)]
        x: Rational,
        /// Scale Y as p/q (rational > 0)
        #[arg(long)]
        y: Rational,
        /// Keep only gcd(u, n) = 1
        #[arg(long, default_value_t = true, action = clap::ArgAction::Set)]
        coprime: bool,
    },
    /// Coverage profile of the window count and the measure where it is >= T
    Measure {
        /// Exponent k (integer >= 1)
        #[arg(long)]
        k: u32,
        /// Largest base N (integer >= 1)
        #[arg(long)]
        n_max: u64,
        /// Scale Y as p/q (rational > 0)
        #[arg(long)]
        y: Rational,
        /// Threshold T (integer >= 1)
        #[arg(long)]
        t: u64,
        /// Keep only gcd(u, n) = 1
        #[arg(long, default_value_t = true, action = clap::ArgAction::Set)]
        coprime: bool,
    },
    /// Evaluate sum_{N < n < eta N} e((y/alpha)(n/N)^alpha) directly
    ExpsumDirect {
        #[command(flatten)]
        phase: PhaseArgs,
    },
    /// Compare the direct sum with its stationary-phase dual sum
    ExpsumVdc {
        #[command(flatten)]
        phase: PhaseArgs,
    },
    /// Check |sum e(f(n))| <= cot(pi lambda / 2) for the monomial phase
    Kusmin {
        #[command(flatten)]
        phase: PhaseArgs,
        /// Distance lambda of f' from the integers (real in (0, 1/2])
        #[arg(long)]
        lambda: f64,
    },
    /// Mean value (1/Y) int_{-Y}^{Y} |sum e(y u/n^k)|^2 and the pair count J
    Meanvalue {
        /// Exponent k (integer >= 1)
        #[arg(long)]
        k: u32,
        /// First base n (integer >= 1)
        #[arg(long)]
        n_lo: u64,
        /// Last base n, inclusive (integer >= n-lo)
        #[arg(long)]
        n_hi: u64,
        /// First numerator u (integer >= 1)
        #[arg(long)]
        u_lo: u64,
        /// Last numerator u, inclusive (integer >= u-lo)
        #[arg(long)]
        u_hi: u64,
        /// Integration half-length Y (real > 0); also the pair scale 1/Y
        #[arg(long)]
        y: f64,
        /// Relative agreement required between successive step halvings
        #[arg(long, default_value_t = 1e-4)]
        rel_tol: f64,
    },
    /// Large-sieve constant Delta as the top Gram eigenvalue, with baselines
    SieveDelta {
        #[command(flatten)]
        sieve: SieveArgs,
        /// Relative residual tolerance of the power iteration
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// l1 sums over random unit coefficient vectors against sqrt(P Delta)
    SieveL1 {
        #[command(flatten)]
        sieve: SieveArgs,
        /// Number of random unit-norm vectors alpha
        #[arg(long, default_value_t = 100)]
        trials: usize,
        /// Relative residual tolerance of the power iteration
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Dual quadratic form over random unimodular tables against Delta * P
    SieveDual {
        #[command(flatten)]
        sieve: SieveArgs,
        /// Number of random unimodular coefficient tables
        #[arg(long, default_value_t = 200)]
        draws: usize,
        /// Relative residual tolerance of the power iteration
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Baselines M + N^2k, NM + N^(k+1), N^(k+1) + M, N^(k+1) + (M N^(k+1))^(1/2)
    Bounds {
        /// Exponent k (integer >= 1)
        #[arg(long)]
        k: u32,
        /// Largest base N (integer >= 1)
        #[arg(long)]
        n: u64,
        /// Window length M (integer >= 1)
        #[arg(long)]
        m: u64,
    },
    /// Pair counts at Y = N^(k+1) for a list of N, with log-slopes
    SharpnessStudy {
        /// Exponent k (integer >= 1)
        #[arg(long, default_value_t = 2)]
        k: u32,
        /// Bases N, comma separated (integers >= 1)
        #[arg(long, value_delimiter = ',', default_values_t = vec![8u64, 12, 16, 20, 24])]
        n: Vec<u64>,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Enumerate { .. } => "enumerate",
            Command::Pairs { .. } => "pairs",
            Command::Blocks { .. } => "blocks",
            Command::Window { .. } => "window",
            Command::Measure { .. } => "measure",
            Command::ExpsumDirect { .. } => "expsum-direct",
            Command::ExpsumVdc { .. } => "expsum-vdc",
            Command::Kusmin { .. } => "kusmin",
            Command::Meanvalue { .. } => "meanvalue",
            Command::SieveDelta { .. } => "sieve-delta",
            Command::SieveL1 { .. } => "sieve-l1",
            Command::SieveDual { .. } => "sieve-dual",
            Command::Bounds { .. } => "bounds",
            Command::SharpnessStudy { .. } => "sharpness-study",
        }
    }

    fn default_format(&self) -> Format {
        match self {
            Command::Bounds { .. } | Command::SharpnessStudy { .. } => Format::Csv,
            _ => Format::Json,
        }
    }
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

/// Exit code for a library error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Resource { .. } => EXIT_RESOURCE,
        Error::Range(_)
        | Error::Coprimality { .. }
        | Error::OverflowPolicy(_)
        | Error::Dimension { .. }
        | Error::Index { .. }
        | Error::Parse(_)
        | Error::Assertion(_)
        | Error::RootBracket(_) => EXIT_VALIDATION,
        Error::Convergence { .. } => EXIT_INTERNAL,
    }
}

/// Runs the report for `cli` without writing it anywhere.
pub fn execute(cli: &Cli) -> crate::Result<Report> {
    let start = Instant::now();
    let mut report = commands::dispatch(&cli.command, &cli.common)?;
    report.elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(report)
}

/// Parses `args` (program name first), runs, writes the report and returns
/// the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_VALIDATION } else { EXIT_OK };
        }
    };
    let name = cli.command.name();
    let report = match execute(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("powfrac {name}: error: {e}");
            return exit_code(&e);
        }
    };
    let format = cli.common.format.unwrap_or_else(|| cli.command.default_format());
    let text = report.render(format);
    let written = match &cli.common.output {
        Some(path) => std::fs::write(path, text.as_bytes()),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("powfrac {name}: cannot write report: {e}");
        return EXIT_INTERNAL;
    }
    eprintln!("powfrac {name}: {} ({:.1} ms)", report.summary, report.elapsed_ms);
    EXIT_OK
}
