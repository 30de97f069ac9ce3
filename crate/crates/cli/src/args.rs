use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "lds4", version, about = "Order-4 linear divisibility sequences")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Starting precision in bits for certified arithmetic.
    #[arg(long, global = true, env = "LDS4_PRECISION", default_value_t = lds4_core::DEFAULT_PRECISION,
          value_parser = clap::value_parser!(u32).range(64..=lds4_core::MAX_PRECISION as i64))]
    pub precision: u32,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Plain,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Terms of the Lucas sequence U(h, k).
    Lucas(LucasArgs),
    /// Product of two Lucas sequences as a standard order-4 sequence.
    Compose(ComposeArgs),
    /// Split a standard sequence into two order-2 factors.
    Factor(FactorArgs),
    /// Salem standard quartics and nearest-integer sequences.
    #[command(subcommand)]
    Salem(SalemCommand),
    /// Check the divisibility property on a window of terms.
    Divcheck(DivcheckArgs),
    /// Look a sequence up in the OEIS.
    Oeis(OeisArgs),
    /// List the corrections applied to printed formulas.
    Errata,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct LucasArgs {
    #[arg(long)]
    pub h: i64,
    #[arg(long)]
    pub k: i64,
    #[arg(long, default_value_t = 10)]
    pub count: usize,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct ComposeArgs {
    #[arg(long)]
    pub h1: i64,
    #[arg(long)]
    pub k1: i64,
    #[arg(long)]
    pub h2: i64,
    #[arg(long)]
    pub k2: i64,
    #[arg(long, default_value_t = 10)]
    pub count: usize,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct FactorArgs {
    #[arg(long)]
    pub p: i64,
    #[arg(long)]
    pub q: i64,
    #[arg(long)]
    pub r: i64,
    /// Terms compared when verifying each factor pair.
    #[arg(long, default_value_t = 20)]
    pub verify_terms: u64,
}

#[derive(Debug, Subcommand)]
pub enum SalemCommand {
    /// Is x⁴ − px³ + (q+2)x² − px + 1 a Salem standard quartic?
    Check(PqArgs),
    /// Certified nearest-integer sequence E(λαⁿ).
    Generate(GenerateArgs),
    /// Exact rational bounds on q for a given p.
    Region(RegionArgs),
    /// Smallness verdicts over the Salem strip, one row per (p, q).
    Scan(ScanArgs),
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct PqArgs {
    #[arg(long)]
    pub p: i64,
    #[arg(long)]
    pub q: i64,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
#[command(group(ArgGroup::new("source").required(true).args(["t", "p"])))]
pub struct GenerateArgs {
    /// t-family member x⁴ − tx³ + tx² − tx + 1.
    #[arg(long)]
    pub t: Option<i64>,
    #[arg(long, requires = "q")]
    pub p: Option<i64>,
    #[arg(long, requires = "p")]
    pub q: Option<i64>,
    #[arg(long, default_value_t = 10)]
    pub count: u64,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct RegionArgs {
    #[arg(long)]
    pub p: i64,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    #[arg(long, default_value_t = 2)]
    pub p_min: i64,
    #[arg(long, default_value_t = 12)]
    pub p_max: i64,
    /// Only cells inside the closed-form region.
    #[arg(long)]
    pub region_only: bool,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("source").required(true).args(["lucas", "terms", "salem", "standard"])))]
pub struct DivcheckArgs {
    /// Lucas parameters `h,k`.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub lucas: Option<Vec<i64>>,
    /// Explicit terms starting at index 0.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub terms: Option<Vec<String>>,
    /// t-family nearest-integer sequence.
    #[arg(long)]
    pub salem: Option<i64>,
    /// Standard parameters `p,q,r`.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub standard: Option<Vec<i64>>,
    /// Largest index checked.
    #[arg(long, default_value_t = 30)]
    pub n: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SourceArg {
    CacheFirst,
    CacheOnly,
    Live,
    Fixture,
}

#[derive(Debug, Args)]
pub struct OeisArgs {
    #[arg(long, value_delimiter = ',', required = true, allow_hyphen_values = true)]
    pub terms: Vec<String>,
    #[arg(long, value_enum, default_value_t = SourceArg::CacheFirst)]
    pub source: SourceArg,
    #[arg(long, env = "LDS4_OEIS_CACHE")]
    pub cache_dir: Option<PathBuf>,
}
