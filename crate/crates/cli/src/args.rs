use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "hsfield", version, about = "Truncated formal group laws and iterative Hasse-Schmidt derivations")]
pub struct Cli {
    /// Output style.
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    pub format: Format,
    /// Computation budget; overrides HF_BUDGET.
    #[arg(long, global = true)]
    pub budget: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Records,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Formal group laws.
    #[command(subcommand)]
    Fgl(FglCommand),
    /// Hasse-Schmidt derivations.
    #[command(subcommand)]
    Hs(HsCommand),
    /// Prolongations and axiom instances.
    #[command(subcommand)]
    Geo(GeoCommand),
    /// Reproduction suites.
    #[command(subcommand)]
    Suite(SuiteCommand),
}

#[derive(Args, Debug, Clone)]
pub struct GroupArgs {
    /// Builtin law: additive, multiplicative, witt2, ga_semidirect_gm.
    #[arg(long, alias = "group", conflicts_with = "law_file")]
    pub name: Option<String>,
    /// Law file.
    #[arg(long)]
    pub law_file: Option<PathBuf>,
    #[arg(long)]
    pub p: Option<u64>,
    /// Degree of the coefficient field over F_p.
    #[arg(long, default_value_t = 1)]
    pub n: u32,
    /// Dimension of the additive law; defaults to the derivation's or 1.
    #[arg(long)]
    pub e: Option<usize>,
}

#[derive(Subcommand, Debug)]
pub enum FglCommand {
    /// Unit and associativity modulo p^m-th powers.
    Check {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        m: u32,
    },
    /// The nonzero structure constants c[i][j][k].
    Constants {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        m: u32,
    },
}

#[derive(Subcommand, Debug)]
pub enum HsCommand {
    /// Iterativity of a derivation file against a law.
    CheckIter {
        #[arg(long)]
        derivation: PathBuf,
        #[command(flatten)]
        group: GroupArgs,
    },
    /// The canonical derivation on the coordinate ring of a law.
    Canonical {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        m: u32,
    },
    /// Constants of a derivation file in a degree slice.
    Constants {
        #[arg(long)]
        derivation: PathBuf,
        #[arg(long)]
        degree: u32,
        /// Kernel of every D_i with i nonzero instead of the first-order ones.
        #[arg(long)]
        absolute: bool,
    },
    /// Linear dependence over the constants via the Wronskian.
    Wronskian {
        #[arg(long)]
        derivation: PathBuf,
        #[command(flatten)]
        group: GroupArgs,
        /// Elements as `num` or `num / den`, polynomials in the generators.
        #[arg(long = "element", required = true)]
        elements: Vec<String>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Pointwise,
    Symbolic,
}

#[derive(Args, Debug, Clone)]
pub struct GeoArgs {
    /// Derivation file on the field of rational functions in its generators.
    #[arg(long)]
    pub derivation: PathBuf,
    /// Variety file for V.
    #[arg(long)]
    pub v: PathBuf,
}

#[derive(Subcommand, Debug)]
pub enum GeoCommand {
    /// The prolongation of V as a variety file.
    Nabla {
        #[command(flatten)]
        geo: GeoArgs,
    },
    /// Whether W is carried into its prolongation by the comultiplication.
    CheckCompat {
        #[command(flatten)]
        geo: GeoArgs,
        #[arg(long)]
        w: PathBuf,
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, value_enum, default_value_t = Mode::Symbolic)]
        mode: Mode,
        /// Field size for pointwise enumeration.
        #[arg(long)]
        q: Option<u64>,
    },
    /// Search for a point of V whose jet lies in W but not in Z.
    Search {
        #[command(flatten)]
        geo: GeoArgs,
        #[arg(long)]
        w: PathBuf,
        #[arg(long)]
        z: Option<PathBuf>,
        #[command(flatten)]
        group: GroupArgs,
        /// Search the constants of F_q; q must be the size of the base field.
        #[arg(long, conflicts_with = "degree", required_unless_present = "degree")]
        q: Option<u64>,
        /// Search polynomials in the generators of degree at most this.
        #[arg(long)]
        degree: Option<u32>,
        #[arg(long)]
        assert_irreducible: bool,
        #[arg(long)]
        assert_generic_projection: bool,
    },
}

#[derive(Subcommand, Debug)]
pub enum SuiteCommand {
    /// Run every acceptance criterion.
    Acceptance {
        #[arg(long, default_value_t = hsfield::suite::DEFAULT_SEED)]
        seed: u64,
        /// Run a single criterion.
        #[arg(long)]
        only: Option<u32>,
    },
}
