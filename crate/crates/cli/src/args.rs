use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Default decimal precision when none is given on the command line.
pub const PRECISION_ENV: &str = "COSECNUM_PRECISION";

#[derive(Debug, Parser)]
#[command(name = "cosecnum", version, about = "Generalized cosecant numbers: tables, identities, benchmarks")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args, Clone)]
pub struct GlobalOpts {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,

    /// Write the primary output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Worker threads for partition accumulation and grid evaluation.
    #[arg(long, default_value_t = 1, global = true)]
    pub threads: usize,

    /// Print progress to stderr.
    #[arg(long, short, global = true)]
    pub verbose: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Partitions of k with their multiplicities and lengths.
    Table1 {
        #[arg(long, default_value_t = 6)]
        k: u32,
    },
    /// Rows c_{ρ,0} … c_{ρ,k_max} as exact coefficient fractions.
    Table2 {
        #[arg(long, default_value_t = 15)]
        k_max: u32,
        /// Cross-check against the exp-log oracle and the transcribed golden rows.
        #[arg(long)]
        verify: bool,
    },
    /// Accuracy ratios β(ρ,k) of the four-term approximation, truncated to six decimals.
    #[command(alias = "beta-table")]
    Table3 {
        #[arg(long, value_delimiter = ',', default_values_t = [10, 15, 20, 30, 50, 100, 1000])]
        rhos: Vec<i64>,
        #[arg(long, value_delimiter = ',', default_values_t = [6, 8, 10, 12, 15])]
        ks: Vec<u32>,
        #[arg(long)]
        verify: bool,
    },
    /// The polynomials r_ℓ(k) with s_k^{(k−ℓ)} = (−1)^ℓ C(k,ℓ+1) r_ℓ(k).
    Table4 {
        #[arg(long, default_value_t = 10)]
        ell_max: u32,
        #[arg(long)]
        verify: bool,
    },
    /// Closed forms C_{k,k−ℓ}, ℓ ≤ 4, against the generated coefficients.
    CoeffClosed {
        #[arg(long, default_value_t = 10)]
        k_max: u32,
    },
    /// c_{ρ,k} as a polynomial, or its value at --rho.
    Cosec(SeriesArgs),
    /// Coefficients of (sec z)^ρ, likewise.
    Secant(SeriesArgs),
    /// Run identity suites; exits 1 if any asserted instance fails.
    Verify(VerifyArgs),
    /// ζ(2m) estimate from cosecant ratios at finite v, with its bracket.
    Zeta {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        v: u32,
        #[arg(long, env = PRECISION_ENV, default_value_t = 50)]
        precision: u32,
    },
    /// Wall time of the partition method against the exp-log oracle.
    Bench {
        #[arg(long, default_value_t = 20)]
        k_max: u32,
        #[arg(long, value_enum, default_value_t = BenchMethod::Both)]
        method: BenchMethod,
        #[arg(long, default_value_t = 1)]
        repetitions: u32,
    },
}

#[derive(Debug, Args)]
pub struct SeriesArgs {
    #[arg(long)]
    pub k: u32,
    /// Evaluate at this ρ (integer, n/d or decimal).
    #[arg(long, allow_hyphen_values = true)]
    pub rho: Option<String>,
    /// Also print a decimal value to this many significant digits.
    #[arg(long, env = PRECISION_ENV)]
    pub precision: Option<u32>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = Suite::All)]
    pub suite: Suite,
    #[arg(long, default_value_t = 30)]
    pub k_max: u32,
    #[arg(long, default_value_t = 30)]
    pub v_max: u32,
    #[arg(long, default_value_t = 5)]
    pub m_max: u32,
    /// Only print failing instances and the summary.
    #[arg(long)]
    pub quiet: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    All,
    RhoIdentities,
    Stirling,
    Hurwitz,
    Nine,
    Symmetric,
    C2v,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BenchMethod {
    Partition,
    Oracle,
    Both,
}
