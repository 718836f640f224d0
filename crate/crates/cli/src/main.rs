//! `corrcount`: exact counts, extensions and bound checks for correspondence
//! colourings of small planar graphs.

mod commands;
mod input;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use corrcount::io::Format;
use corrcount::rational::{parse_rational, Rational};
use corrcount::Error;

/// Exit statuses. A failed verdict is a falsified theorem and gets its own code.
pub mod exit {
    pub const FALSIFIED: u8 = 1;
    pub const INPUT: u8 = 2;
    pub const TRUNCATED: u8 = 3;
    pub const UNKNOWN_BOUND: u8 = 64;
}

#[derive(Parser, Debug)]
#[command(name = "corrcount", version, about = "Exact correspondence colouring counts and bound checks")]
pub struct Cli {
    /// Search budget: backtracking nodes per branch, or assignments per deletability check.
    #[arg(long, global = true, value_parser = integer::<u64>)]
    pub budget: Option<u64>,
    /// Seed for every random choice.
    #[arg(long, global = true, default_value = "0", value_parser = integer::<u64>)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Json)]
    pub format: FormatArg,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum FormatArg {
    Json,
    Csv,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Json => Format::Json,
            FormatArg::Csv => Format::Csv,
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Count colourings of each graph under each assignment.
    Count {
        /// Graph6 file, JSON embedding, `corpus:<family>:<n>`, family name or graph6 string.
        #[arg(long)]
        graph: String,
        /// `identity`, `permutation` (seeded random) or a JSON assignment file.
        #[arg(long, default_value = "identity")]
        assignment: String,
        #[arg(long, value_parser = integer::<usize>)]
        k: Option<usize>,
        /// Random assignments per graph for `permutation`.
        #[arg(long, default_value = "1", value_parser = integer::<usize>)]
        samples: usize,
    },
    /// Extend a precolouring of a boundary path to the whole plane graph.
    Extend {
        /// JSON embedding or planar family name.
        #[arg(long)]
        embedding: String,
        #[arg(long)]
        assignment: String,
        /// JSON colouring `{"v": colour}` of the precoloured path.
        #[arg(long)]
        precoloured: String,
        /// Use the girth-five version with three-element lists.
        #[arg(long)]
        girth5: bool,
        /// Two-list vertices for `--girth5`, comma separated.
        #[arg(long, default_value = "")]
        independent: String,
    },
    /// Compare exact counts with a closed-form bound.
    Verify {
        /// planar-5cc, girth5-3cc, extension-5cc, extension-3cc, alon-furedi,
        /// birkhoff-lewis, local-girth, euler-girth, cheeger52, cheeger270
        #[arg(long)]
        bound: String,
        #[arg(long)]
        graph: String,
        /// As for `count`; each bound has its own default.
        #[arg(long)]
        assignment: Option<String>,
        #[arg(long, value_parser = integer::<usize>)]
        k: Option<usize>,
        #[arg(long, default_value = "1", value_parser = integer::<usize>)]
        samples: usize,
        /// Precolouring for the extension bounds.
        #[arg(long)]
        precoloured: Option<String>,
        /// Replace every computed count (harness self-test).
        #[arg(long)]
        count_override: Option<String>,
    },
    /// Stream deletable sets or criticality certificates as JSON lines.
    Search {
        #[command(subcommand)]
        mode: SearchMode,
    },
    /// Deficiency of a graph relative to a subgraph.
    Deficiency {
        #[arg(long)]
        graph: String,
        /// Vertices of H, comma separated.
        #[arg(long, default_value = "")]
        h: String,
        /// Edges of H as `u-v,...`; induced when omitted.
        #[arg(long)]
        h_edges: Option<String>,
        #[arg(long = "g", default_value = "3", value_parser = integer::<u32>)]
        g_param: u32,
        #[arg(long, value_parser = rational)]
        epsilon: Option<Rational>,
    },
    /// Girth, and optionally the girth through an edge or vertex.
    Girth {
        #[arg(long)]
        graph: String,
        /// `u,v`
        #[arg(long)]
        edge: Option<String>,
        #[arg(long, value_parser = integer::<usize>)]
        vertex: Option<usize>,
    },
}

#[derive(Subcommand, Debug)]
pub enum SearchMode {
    /// First X outside H (by size, then lexicographic) with G[X] r-deletable.
    Deletable {
        #[arg(long)]
        graph: String,
        #[arg(long, default_value = "5", value_parser = integer::<usize>)]
        r: usize,
        #[arg(long, default_value = "")]
        h: String,
    },
    /// Whether G is S-critical for an assignment, with its certificate.
    Critical {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        assignment: String,
        #[arg(long)]
        s: String,
        #[arg(long)]
        s_edges: Option<String>,
    },
}

fn rational(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

/// Integers, also written as `p/q` when `q` divides `p`.
fn integer<T: TryFrom<i64>>(s: &str) -> Result<T, String> {
    let r = rational(s)?;
    if !r.is_integer() {
        return Err(format!("{s} is not an integer"));
    }
    T::try_from(r.to_integer()).map_err(|_| format!("{s} is out of range"))
}

pub fn exit_code(e: &Error) -> u8 {
    match e {
        Error::TheoremFalsified(_) => exit::FALSIFIED,
        Error::BudgetExceeded(_) => exit::TRUNCATED,
        _ => exit::INPUT,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok((report, code)) => match report.write(cli.out.as_deref()) {
            Ok(()) => ExitCode::from(code),
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(exit::INPUT)
            }
        },
        Err(commands::Failure::UnknownBound(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(exit::UNKNOWN_BOUND)
        }
        Err(commands::Failure::Core(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
