use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::report::Format;

#[derive(Debug, Parser)]
#[command(name = "plfun", version, about = "p-adic L-functions from modular symbols and measures")]
pub struct Cli {
    /// TOML file with default settings.
    #[arg(long, env = "PLFUN_CONFIG", global = true)]
    pub config: Option<PathBuf>,
    #[arg(long, value_enum, global = true)]
    pub format: Option<Format>,
    /// Absolute p-adic precision.
    #[arg(long, global = true)]
    pub prec: Option<u32>,
    /// Number of power series terms.
    #[arg(long, global = true)]
    pub trunc: Option<usize>,
    /// Seed for randomized sweeps.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Values of the Kubota-Leopoldt zeta function at negative integers.
    Zeta(ZetaArgs),
    /// Measures and p-adic L-values of a rational newform.
    Modform(ModformArgs),
    /// Newton and Hodge polygons.
    Polygon {
        #[command(subcommand)]
        cmd: PolygonCmd,
    },
    /// Quotients of branch series families.
    Symcube {
        #[command(subcommand)]
        cmd: SymcubeCmd,
    },
    /// Checks on higher-rank period provider files.
    Provider {
        #[command(subcommand)]
        cmd: ProviderCmd,
    },
}

#[derive(Debug, Args)]
pub struct ZetaArgs {
    #[arg(short)]
    pub p: Option<u64>,
    /// Evaluate at s = -k.
    #[arg(short)]
    pub k: u32,
    /// Regularizing integer c, prime to p.
    #[arg(long)]
    pub reg_c: Option<u64>,
}

#[derive(Debug, Args)]
pub struct ModformArgs {
    /// Level.
    #[arg(short = 'N')]
    pub level: Option<u64>,
    /// Weight.
    #[arg(short)]
    pub k: Option<u32>,
    #[arg(short)]
    pub p: Option<u64>,
    /// Number of measure levels to build.
    #[arg(long)]
    pub levels: Option<u32>,
    #[command(subcommand)]
    pub cmd: ModformCmd,
}

#[derive(Debug, Subcommand)]
pub enum ModformCmd {
    /// Builds the measure and prints its certificates.
    Measure {
        /// Fail on any additivity violation and list them.
        #[arg(long)]
        check_additivity: bool,
        /// Write the degree-0 measures as JSON.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluates the p-adic L-function at a character.
    Lp {
        /// `trivial` or `t:<tame>,n:<conductor exponent>[,w:<wild>]`.
        #[arg(long = "char")]
        chi: Option<String>,
        #[arg(short, default_value_t = 0)]
        j: u32,
    },
    /// The algebraic twisted central value from the finite Birch sum.
    Birch {
        #[arg(long = "char")]
        chi: Option<String>,
    },
    /// Branch power series of the L-function as a family JSON.
    Series {
        /// Write the family alone, in the format `symcube quotient` reads.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exports the eigen-symbol values needed for the measure.
    Export,
}

#[derive(Debug, Subcommand)]
pub enum PolygonCmd {
    /// Symmetric power of `X^2 - a X + q`.
    Sym {
        #[arg(short, allow_negative_numbers = true)]
        a: String,
        #[arg(short, allow_negative_numbers = true)]
        q: String,
        #[arg(short)]
        m: u32,
        #[arg(short)]
        p: Option<u64>,
    },
    /// Ordinarity of `Sym^m` of a weight-k form with trivial character.
    Ordinary {
        #[arg(long, allow_negative_numbers = true)]
        ap: i64,
        #[arg(short)]
        k: u32,
        #[arg(short)]
        m: u32,
        #[arg(short)]
        p: Option<u64>,
    },
    /// GL4 polygons from the valuations of nu_1(p), nu_2(p).
    Gl4 {
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        nu_vals: Vec<String>,
    },
}

#[derive(Debug, Subcommand)]
pub enum SymcubeCmd {
    /// `F / G` branch by branch, with the zeros of `G`.
    Quotient {
        f: PathBuf,
        g: PathBuf,
        /// Search characters of conductor up to `p^(levels + 1)`.
        #[arg(long, default_value_t = 2)]
        levels: u32,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Convention {
    Independent,
    Tied,
}

#[derive(Debug, Subcommand)]
pub enum ProviderCmd {
    /// Distribution checks for a provider table.
    Check {
        file: PathBuf,
        #[arg(long, default_value_t = 2)]
        levels: u32,
        #[arg(long, value_enum, default_value_t = Convention::Independent)]
        convention: Convention,
    },
}
