use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "carnot",
    version,
    about = "Exact computations for invariant currents on Carnot groups"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

/// Where the algebra comes from and how to print the answer.
#[derive(Debug, Args)]
pub struct Source {
    /// Catalog name (`heisenberg:2`), path to an algebra document, or `-` for stdin.
    #[arg(long, value_name = "NAME|PATH|-")]
    pub algebra: Option<String>,

    /// Same as `--algebra`, given positionally.
    #[arg(value_name = "SOURCE")]
    pub source: Option<String>,

    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Worker threads for the parallel search (default: all cores).
    #[arg(long)]
    pub threads: Option<usize>,
}

#[derive(Debug, Args)]
pub struct KVector {
    /// Horizontal multivector, e.g. `3/2*u1^u3 - u2^u4`.
    #[arg(long, value_name = "EXPR", allow_hyphen_values = true)]
    pub kvector: String,

    /// Expected degree; an error if the expression disagrees.
    #[arg(long)]
    pub degree: Option<usize>,
}

#[derive(Debug, Args)]
pub struct Degree {
    #[arg(long)]
    pub degree: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check grading, Jacobi, bracket generation and top-layer centrality.
    Validate {
        #[command(flatten)]
        source: Source,
    },
    /// Layer dimensions, homogeneous dimension, brackets, vertical basis.
    Info {
        #[command(flatten)]
        source: Source,
    },
    /// Invariant covectors annihilating the horizontal layer.
    VerticalBasis {
        #[command(flatten)]
        source: Source,
    },
    /// Boundary of an invariant multivector.
    Boundary {
        #[command(flatten)]
        kvector: KVector,
        #[command(flatten)]
        source: Source,
    },
    /// Whether a horizontal k-vector defines an invariant current.
    IsCurrent {
        #[command(flatten)]
        kvector: KVector,
        #[command(flatten)]
        source: Source,
    },
    /// Contractions T⌞dθ by vertical covectors θ.
    RestrictDtheta {
        #[command(flatten)]
        kvector: KVector,
        /// Vertical covector, e.g. `Z*`; all vertical basis covectors when omitted.
        #[arg(long, value_name = "EXPR", allow_hyphen_values = true)]
        theta: Option<String>,
        #[command(flatten)]
        source: Source,
    },
    /// Basis of the invariant k-cycle space.
    Cycles {
        #[command(flatten)]
        degree: Degree,
        #[command(flatten)]
        source: Source,
    },
    /// Span of the vertical ideal in degree k and whether it is everything.
    Rumin {
        #[command(flatten)]
        degree: Degree,
        #[command(flatten)]
        source: Source,
    },
    /// Whether a simple invariant k-cycle exists.
    SimpleCycle {
        #[command(flatten)]
        degree: Degree,
        #[command(flatten)]
        search: Search,
        #[command(flatten)]
        source: Source,
    },
    /// Whether invariant k-cycles exist but none is simple.
    NonsimpleCycle {
        #[command(flatten)]
        degree: Degree,
        #[command(flatten)]
        search: Search,
        #[command(flatten)]
        source: Source,
    },
    /// Whether the group is purely k-unrectifiable.
    Rectifiable {
        #[command(flatten)]
        degree: Degree,
        #[command(flatten)]
        search: Search,
        #[command(flatten)]
        source: Source,
    },
    /// Build a catalog algebra; lists the catalog when no name is given.
    Catalog {
        name: Option<String>,
        param: Option<usize>,
        /// Print the algebra document instead of a summary.
        #[arg(long)]
        emit_spec: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Debug, Args)]
pub struct Search {
    /// Largest numerator/denominator used by the coefficient search.
    #[arg(long, default_value_t = 5)]
    pub height_bound: u32,
}
