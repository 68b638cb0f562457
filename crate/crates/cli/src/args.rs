use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;

#[derive(Debug, Parser)]
#[command(
    name = "mlcm",
    version,
    about = "Mittag-Leffler functions, Pollard distributions and complete monotonicity checks"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format; the default depends on the subcommand.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Print numbers with 17 significant digits.
    #[arg(long, global = true)]
    pub full_precision: bool,

    /// Tolerance; quadrature tolerance for evaluations, comparison tolerance for suites.
    #[arg(long, global = true, env = "MLCM_DEFAULT_TOL")]
    pub tol: Option<f64>,

    /// Write output to this file instead of standard output.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Plain,
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Series,
    Pollard,
    Spectral,
    Limit,
    All,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Series => "series",
            Method::Pollard => "pollard",
            Method::Spectral => "spectral",
            Method::Limit => "limit",
            Method::All => "all",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Stable,
    Pollard,
    Spectral,
    Tilted,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Stable => "stable",
            Family::Pollard => "pollard",
            Family::Spectral => "spectral",
            Family::Tilted => "tilted",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Cm,
    Cross,
    Laplace,
    Limit,
    All,
}

#[derive(Debug, Clone, Args)]
pub struct ParamArgs {
    #[arg(long)]
    pub alpha: f64,
    #[arg(long, default_value_t = 1.0)]
    pub beta: f64,
    #[arg(long, default_value_t = 1.0)]
    pub gamma: f64,
}

#[derive(Debug, Clone, Args)]
pub struct RangeArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub x_min: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub x_max: f64,
    #[arg(long, default_value_t = 11)]
    pub steps: usize,
}

#[derive(Debug, Clone, Args)]
pub struct LimitArgs {
    /// Number of gamma-prior refinements for the limit method.
    #[arg(long, default_value_t = 64)]
    pub n: u32,
    /// Gamma-prior shape for the limit method.
    #[arg(long, default_value_t = 1.0)]
    pub mu: f64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate E^gamma_{alpha,beta}(x) at one argument.
    Eval {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, allow_hyphen_values = true)]
        x: f64,
        #[arg(long, value_enum, default_value_t = Method::Series)]
        method: Method,
        #[command(flatten)]
        limit: LimitArgs,
    },
    /// Tabulate E^gamma_{alpha,beta}(x) over a range of arguments.
    Table {
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        range: RangeArgs,
        #[arg(long, value_enum, default_value_t = Method::Series)]
        method: Method,
        #[command(flatten)]
        limit: LimitArgs,
    },
    /// Tabulate a density.
    Density {
        #[command(flatten)]
        family: FamilyArgs,
        #[command(flatten)]
        range: RangeArgs,
    },
    /// Tabulate a distribution function.
    Cdf {
        #[command(flatten)]
        family: FamilyArgs,
        #[command(flatten)]
        range: RangeArgs,
    },
    /// Run verification suites.
    Verify {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        /// Add `eps * x` to the pollard route of the cross suite.
        #[arg(long)]
        inject: Option<f64>,
    },
    /// Show the gamma-mixture limit converging.
    LimitDemo {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, default_value_t = 1.0)]
        lambda: f64,
        #[arg(long, default_value_t = 1.0)]
        x: f64,
        #[arg(long, value_delimiter = ',', default_value = "0.5,1,2")]
        mu_list: Vec<f64>,
        #[arg(long, value_delimiter = ',', default_value = "1,2,4,8,16,32,64")]
        n_list: Vec<u32>,
    },
}

#[derive(Debug, Clone, Args)]
pub struct FamilyArgs {
    #[arg(long, value_enum)]
    pub family: Family,
    #[arg(long)]
    pub alpha: f64,
    #[arg(long, default_value_t = 1.0)]
    pub beta: f64,
    #[arg(long, default_value_t = 1.0)]
    pub gamma: f64,
    /// Tilt exponent of the tilted family.
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub theta: f64,
    /// Rate of the spectral family.
    #[arg(long, default_value_t = 1.0)]
    pub lambda: f64,
    /// Scale of the stable and tilted families.
    #[arg(long, default_value_t = 1.0)]
    pub t: f64,
}
