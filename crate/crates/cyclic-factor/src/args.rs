use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "cyclic-factor",
    version,
    about = "Cyclic-group tools for period finding and factoring"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Register {
    Pow2,
    Paper,
}

/// Flags shared by every subcommand.
#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Seed for every random choice
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output format (defaults to json for `factor`, table otherwise)
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Write output to a file instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Factor N with the simulated period-finding circuit
    Factor {
        #[arg(long)]
        n: u64,
        /// Base; drawn at random from the units mod N when absent
        #[arg(long)]
        a: Option<u64>,
        #[arg(long, value_enum, default_value_t = Register::Pow2)]
        register: Register,
        /// Register size override (power of two)
        #[arg(long)]
        m: Option<u64>,
        #[arg(long, default_value_t = 16)]
        max_attempts: u32,
        #[command(flatten)]
        common: Common,
    },
    /// Multiplicative order of a modulo N
    Order {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        a: u64,
        #[command(flatten)]
        common: Common,
    },
    /// Residue and subgroup decompositions of every element of Z_N
    Crt {
        #[arg(long)]
        n: u64,
        #[command(flatten)]
        common: Common,
    },
    /// Coset partitions of Z_N, or of the extended group of order aN
    Cosets {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        a: Option<u64>,
        #[command(flatten)]
        common: Common,
    },
    /// Project a seeded random function on Z_N onto irrep j
    Project {
        /// Group order
        #[arg(long)]
        n: u64,
        #[arg(long)]
        j: u64,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[command(flatten)]
        common: Common,
    },
    /// Symmetry-adapted orbitals of an n-site ring from one site orbital
    Salc {
        /// Number of sites
        #[arg(long)]
        n: u64,
        /// Single irrep; all irreps when absent
        #[arg(long)]
        j: Option<u64>,
        #[command(flatten)]
        common: Common,
    },
    /// Hückel ring (onsite 0, hopping -1): energies, modes and degeneracies
    Ring {
        /// Number of sites
        #[arg(long)]
        n: u64,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        #[command(flatten)]
        common: Common,
    },
    /// Coset labels a^x = alpha N + beta with slice coordinates
    Oracle {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        a: u64,
        /// Number of rows, x = 0 .. len-1
        #[arg(long)]
        len: u64,
        #[command(flatten)]
        common: Common,
    },
    /// DFT of the indicator of f(x) = w over a window
    Spectrum {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        a: u64,
        /// Window length; defaults to 4aN
        #[arg(long)]
        len: Option<u64>,
        /// Residue w
        #[arg(long, default_value_t = 1)]
        w: u64,
        #[command(flatten)]
        common: Common,
    },
    /// Exact output distribution of one circuit run
    Simulate {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        a: u64,
        #[arg(long, value_enum, default_value_t = Register::Pow2)]
        register: Register,
        /// Register size override (power of two)
        #[arg(long)]
        m: Option<u64>,
        /// Force the bottom-register reading; sampled from the seed when absent
        #[arg(long)]
        w: Option<u64>,
        #[command(flatten)]
        common: Common,
    },
    /// Great orthogonality check for the irreps of Z_N
    GotCheck {
        /// Group order
        #[arg(long)]
        n: u64,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[command(flatten)]
        common: Common,
    },
}

impl Command {
    pub fn common(&self) -> &Common {
        match self {
            Command::Factor { common, .. }
            | Command::Order { common, .. }
            | Command::Crt { common, .. }
            | Command::Cosets { common, .. }
            | Command::Project { common, .. }
            | Command::Salc { common, .. }
            | Command::Ring { common, .. }
            | Command::Oracle { common, .. }
            | Command::Spectrum { common, .. }
            | Command::Simulate { common, .. }
            | Command::GotCheck { common, .. } => common,
        }
    }

    pub fn default_format(&self) -> Format {
        match self {
            Command::Factor { .. } => Format::Json,
            _ => Format::Table,
        }
    }
}
