use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;

#[derive(Debug, Parser)]
#[command(
    name = "gvbps",
    version,
    about = "Exact GW/BPS generating-function computations"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,

    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Tsv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// q-expansion of the Eisenstein series E_k with constant term 1.
    Eisenstein {
        #[arg(long)]
        weight: i64,
        #[arg(long, alias = "order", default_value_t = 12)]
        q_order: usize,
    },
    /// Poincaré polynomials of Hilbert schemes of points.
    Goettsche {
        /// Betti numbers b0,b1,b2,b3,b4.
        #[arg(long, required_unless_present = "refined")]
        betti: Option<String>,
        #[arg(long, default_value_t = 6)]
        gmax: usize,
        /// Two-variable refinement for the rational elliptic surface.
        #[arg(long)]
        refined: bool,
    },
    /// BPS numbers of C + gF on the rational elliptic surface.
    BpsRationalElliptic {
        #[arg(long, default_value_t = 6)]
        gmax: usize,
    },
    /// Invert the multiple-cover formula: GW table to BPS table.
    GvFromGw(TransformArgs),
    /// Apply the multiple-cover formula: BPS table to GW table.
    GwFromGv(TransformArgs),
    /// Check that a BPS table survives GW and back.
    RoundtripCheck(TransformArgs),
    /// Check tabulated Z_{g;n} numerators against the anomaly recursion.
    AnomalyVerify {
        #[arg(long)]
        table: PathBuf,
    },
    /// Solve the anomaly recursion for one numerator.
    AnomalySolve {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        g: usize,
        /// Table holding the prerequisites.
        #[arg(long)]
        table: PathBuf,
        /// Leading q-coefficients of Z_{g;n}, comma separated.
        #[arg(long, value_delimiter = ',', num_args = 1..)]
        boundary: Vec<String>,
    },
    /// Z_{g;1} for g <= gmax from the exponential resummation.
    GenusSeries {
        #[arg(long, default_value_t = 6)]
        gmax: usize,
        #[arg(long, default_value_t = 12)]
        q_order: usize,
    },
    /// Check the triple product identity in Q[[λ², q]].
    TripleProductCheck {
        #[arg(long, default_value_t = 12)]
        lambda_order: usize,
        #[arg(long, default_value_t = 12)]
        q_order: usize,
    },
}

#[derive(Debug, Args)]
pub struct TransformArgs {
    /// Input table (JSON).
    #[arg(long = "in")]
    pub input: PathBuf,
    /// Highest λ power kept; defaults to min(12, 2*max_genus - 2) of the input.
    #[arg(long, allow_hyphen_values = true)]
    pub lambda_order: Option<i64>,
    /// Highest class degree kept; defaults to min(6, max_degree) of the input.
    #[arg(long)]
    pub degree: Option<u64>,
}
