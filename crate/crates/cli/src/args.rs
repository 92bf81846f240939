//! Command-line grammar.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use cliffinv::{GradeSet, NamedMap};

const EXPRESSION_HELP: &str = "\
Expressions:
  sums and differences of products:  3 - e1 + 2*e12
  rational literals:                 1/2*e3
  powers bind tightest:              (1 + e1)^2, -e1^2 = -(e1^2)
  blades are ascending generators:   e1, e23, e135 (write e2*e1 for reordered products)

Exit codes: 0 success, 1 usage or parse error, 2 not invertible, 3 verification failure";

#[derive(Debug, Parser)]
#[command(
    name = "cliffinv",
    version,
    about = "Exact inverses and discriminants in Clifford algebras Cl(p,q), p + q <= 5",
    after_help = EXPRESSION_HELP
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Invert an element; prints D, the chain factors and the inverse.
    Inv {
        #[command(flatten)]
        sig: SigArgs,
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Print the discriminant D.
    Disc {
        #[command(flatten)]
        sig: SigArgs,
        #[command(flatten)]
        input: InputArgs,
        /// Also evaluate the explicit polynomial (1 <= p + q <= 4) and compare.
        #[arg(long)]
        closed_form: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Apply a named involution: rev, conj, main or psi.
    Map {
        #[command(flatten)]
        sig: SigArgs,
        /// rev, conj, main or psi.
        name: NamedMap,
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// List every length-delta map that is a special involution on the given grades.
    DeltaSearch {
        /// Number of generators.
        #[arg(short = 'n', value_parser = clap::value_parser!(u8).range(0..=5))]
        n: u8,
        /// Grades of the subspace, e.g. 0,1,4.
        #[arg(short = 'I')]
        grades: GradeSet,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Re-check round trip, oracle agreement, closed forms and D = D' on random elements.
    Verify {
        #[command(flatten)]
        sig: SigArgs,
        #[command(flatten)]
        batch: BatchArgs,
        /// Negate every computed inverse.
        #[arg(long, hide = true)]
        inject_fault: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Time formula inversion against the matrix oracle on one random batch.
    Bench {
        #[command(flatten)]
        sig: SigArgs,
        #[command(flatten)]
        batch: BatchArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Debug, Args)]
pub struct SigArgs {
    /// Generators squaring to -1.
    #[arg(short = 'p', value_parser = clap::value_parser!(u8).range(0..=5))]
    pub p: Option<u8>,
    /// Generators squaring to +1.
    #[arg(short = 'q', value_parser = clap::value_parser!(u8).range(0..=5))]
    pub q: Option<u8>,
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Expression to evaluate.
    #[arg(
        required_unless_present = "file",
        conflicts_with = "file",
        allow_hyphen_values = true
    )]
    pub expr: Option<String>,
    /// Read the element from a JSON file instead.
    #[arg(long, value_name = "PATH")]
    pub file: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Print JSON instead of text.
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct BatchArgs {
    /// Number of random elements per signature [default: 200 for verify, 1000 for bench].
    #[arg(long, value_parser = clap::builder::RangedU64ValueParser::<usize>::new().range(1..))]
    pub samples: Option<usize>,
    /// Batch seed; equal seeds give identical inputs.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Coefficients are drawn from [-bound, bound].
    #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u32).range(1..))]
    pub bound: u32,
}
