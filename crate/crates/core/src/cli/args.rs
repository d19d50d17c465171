use std::path::PathBuf;

use clap::{ArgAction, Args, Parser, Subcommand, ValueEnum};

/// Exact double (quasi-)Poisson calculus on quiver path algebras.
#[derive(Parser, Debug, Clone)]
#[command(name = "ncp", version, about)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Attach the wall time of each check to the report (reports then differ between runs).
    #[arg(long, global = true)]
    pub timings: bool,
    /// On FAIL, evaluate the residual at random representation points and report the outcome.
    #[arg(long, global = true, value_name = "BOOL", default_value_t = true, action = ArgAction::Set)]
    pub oracle_fallback: bool,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Build a named structure and write it as a structure document.
    Build {
        #[command(flatten)]
        src: Source,
        /// Write the structure document here instead of into the report.
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Verify an identity exactly.
    Verify {
        #[arg(value_enum)]
        target: VerifyTarget,
        #[command(flatten)]
        src: Source,
        /// Seed for sampled inputs.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of random word triples for `loday`.
        #[arg(long, default_value_t = 50)]
        samples: usize,
        /// A 2-form for `bisymplectic`; defaults to Σ_a d(a) d(a*).
        #[arg(long, value_name = "EXPR")]
        form: Option<String>,
    },
    /// Fuse two vertices of a structure, or compare direct and fused constructions.
    Fuse {
        #[command(flatten)]
        src: Source,
        /// The vertices to fuse: the first is kept, the second merged into it.
        #[arg(long, num_args = 2, value_names = ["V", "W"])]
        merge: Option<Vec<String>>,
        /// Compare the general structure with the fused one-pair structures instead.
        #[arg(long)]
        coherence: bool,
        /// Write the fused structure document here instead of into the report.
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Representation spaces.
    Rep {
        #[command(subcommand)]
        action: RepAction,
    },
    /// The necklace bracket {x, y} modulo commutators.
    Necklace {
        #[command(flatten)]
        src: Source,
        #[arg(long, value_name = "EXPR", allow_hyphen_values = true)]
        x: String,
        #[arg(long, value_name = "EXPR", allow_hyphen_values = true)]
        y: String,
    },
}

#[derive(Subcommand, Debug, Clone)]
pub enum RepAction {
    /// The matrix of an element at a random point.
    Eval {
        #[command(flatten)]
        src: Source,
        #[command(flatten)]
        point: PointArgs,
        #[arg(long, value_name = "EXPR", allow_hyphen_values = true)]
        expr: String,
    },
    /// An identity evaluated exactly at a random point.
    Check {
        #[command(flatten)]
        src: Source,
        #[command(flatten)]
        point: PointArgs,
        #[arg(long, value_enum)]
        check: RepCheck,
    },
}

#[derive(Args, Debug, Clone)]
pub struct PointArgs {
    /// Dimension vector, one entry per vertex.
    #[arg(long, value_name = "CSV")]
    pub dims: String,
    /// Seed of the random point.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

/// Where the quiver, bracket or structure comes from.
#[derive(Args, Debug, Clone, Default)]
pub struct Source {
    /// Quiver document; doubled automatically where a structure needs it.
    #[arg(long, value_name = "FILE")]
    pub quiver: Option<PathBuf>,
    /// Structure document as written by `build`.
    #[arg(long, value_name = "FILE")]
    pub structure: Option<PathBuf>,
    /// Double bracket table document.
    #[arg(long, value_name = "FILE")]
    pub bracket: Option<PathBuf>,
    /// A named structure or bracket.
    #[arg(long, value_enum)]
    pub builtin: Option<Builtin>,
    /// Arrow ordering by id, applied after doubling.
    #[arg(long, value_name = "CSV")]
    pub order: Option<String>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Builtin {
    /// `P = Σ D(a) D(a*)`, `μ = Σ [a, a*]` on the double of `--quiver`.
    Hamiltonian,
    /// The quasi-Hamiltonian structure on one arrow pair.
    OnePair,
    /// The quasi-Hamiltonian structure on the double of `--quiver`.
    GeneralQuasi,
    /// `{{t, t}} = t ⊗ 1 - 1 ⊗ t` on one loop.
    LoopLinear,
    /// `{{t, t}} = t² ⊗ t - t ⊗ t²` on one loop.
    LoopQuadratic,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerifyTarget {
    DoublePoisson,
    QuasiPoisson,
    Moment,
    Loday,
    Bisymplectic,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum RepCheck {
    Jacobi,
    Trace,
    Gauge,
    Moment,
    LiePoisson,
}
