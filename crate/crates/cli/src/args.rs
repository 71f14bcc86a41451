//! Flag surface. Every option is optional at parse time; defaults and the
//! config file are folded in afterwards so that flags always win.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "unirule",
    about = "Point counting and non-uniruledness certificates for complete intersections over finite fields",
    version
)]
pub struct Cli {
    /// Flat key=value config file; flags override its values.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Option<Command>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Certify via the projective point count mod q.
    Certify(VarietyArgs),
    /// Certify a degree-(n+1) hypersurface via the criterion coefficient.
    Hasse(VarietyArgs),
    /// Count affine-cone and projective points.
    Count(VarietyArgs),
    /// Scan Fermat hypersurfaces for the congruence criteria.
    #[command(name = "fermat-scan")]
    FermatScan(ScanArgs),
    /// Codimension lower bounds for rational-curve loci.
    Bounds(BoundsArgs),
}

#[derive(Args, Debug, Default)]
pub struct VarietyArgs {
    /// Field designation: a prime P or P^K.
    #[arg(long, value_name = "P[^K]")]
    pub field: Option<String>,

    /// Ambient projective dimension n (forms live in x0..xn).
    #[arg(long, value_name = "N")]
    pub ambient: Option<u64>,

    /// Defining form; repeat for complete intersections.
    #[arg(long, value_name = "STR")]
    pub poly: Vec<String>,

    /// File with one form per line ('#' comments, blanks ignored).
    #[arg(long, value_name = "PATH", conflicts_with = "poly")]
    pub poly_file: Option<PathBuf>,

    /// Run the independent cross-checks (cone identity, criterion agreement).
    #[arg(long)]
    pub verify: bool,

    #[arg(long, value_enum, value_name = "MODE")]
    pub smoothness: Option<SmoothnessArg>,

    /// Probe extensions F_{q^m} for m up to this depth.
    #[arg(long, value_name = "M")]
    pub probe_depth: Option<u32>,

    /// Enumeration budget in points (default from UNIRULE_BUDGET or 10^8).
    #[arg(long, value_name = "B")]
    pub budget: Option<u64>,

    #[arg(long, value_name = "W")]
    pub workers: Option<usize>,

    /// Seed for extension-field modulus search.
    #[arg(long, value_name = "S")]
    pub seed: Option<u64>,

    #[arg(long, value_enum, value_name = "FMT")]
    pub format: Option<FormatArg>,

    /// Write the report here instead of stdout.
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Default)]
pub struct ScanArgs {
    /// Inclusive prime range A..B.
    #[arg(long, value_name = "A..B")]
    pub p_range: Option<String>,

    /// Inclusive degree range A..B.
    #[arg(long, value_name = "A..B")]
    pub d_range: Option<String>,

    /// Inclusive ambient-dimension range A..B.
    #[arg(long, value_name = "A..B")]
    pub n_range: Option<String>,

    /// Confirm non-uniruled rows by computing the coefficient.
    #[arg(long)]
    pub verify: bool,

    #[arg(long, value_name = "B")]
    pub budget: Option<u64>,

    #[arg(long, value_name = "W")]
    pub workers: Option<usize>,

    #[arg(long, value_name = "S")]
    pub seed: Option<u64>,

    #[arg(long, value_enum, value_name = "FMT")]
    pub format: Option<FormatArg>,

    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Default)]
pub struct BoundsArgs {
    /// Ambient projective dimension n.
    #[arg(short = 'n', long, value_name = "N")]
    pub ambient: Option<u64>,

    /// Multidegree, comma-separated or repeated.
    #[arg(short = 'd', long, value_name = "D1,D2,...", value_delimiter = ',')]
    pub degrees: Vec<u64>,

    #[arg(long, value_enum, value_name = "FMT")]
    pub format: Option<FormatArg>,

    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum SmoothnessArg {
    Probe,
    Assert,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum FormatArg {
    Json,
    Csv,
    Text,
}
