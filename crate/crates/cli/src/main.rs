use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use siglat::commands::{
    cmd_catalog, cmd_complements, cmd_eval, cmd_laws, cmd_search, Output,
};
use siglat::instance::CliResult;
use sigma_lattice::search::Mode;

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Structured,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum SearchMode {
    Soundness,
    Counterexample,
}

impl From<SearchMode> for Mode {
    fn from(m: SearchMode) -> Mode {
        match m {
            SearchMode::Soundness => Mode::Soundness,
            SearchMode::Counterexample => Mode::Counterexample,
        }
    }
}

/// Exact lattice algebra of sigma-fields on finite probability spaces.
///
/// Exit codes: 0 = ran and all laws held; 1 = a law concluded false or a
/// search found a counterexample (or a catalog fact failed); 2 = parse,
/// validation, or usage error.
#[derive(Parser)]
#[command(name = "siglat", version)]
struct Cli {
    /// Output format: human text or deterministic JSON.
    #[arg(long, global = true, value_enum, default_value = "human")]
    format: Format,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Parse an instance file and run its queries in order.
    Eval {
        /// Instance file (JSON).
        file: PathBuf,
    },
    /// Check one law, either on the law queries of a file or on random
    /// hypothesis-satisfying instances.
    Laws {
        /// Law id, e.g. dist-iv (see the registry in the docs).
        #[arg(long)]
        law: String,
        /// Instance file containing law:<id> queries.
        #[arg(long)]
        file: Option<PathBuf>,
        /// Generate random instances instead of reading a file.
        #[arg(long)]
        random: bool,
        /// Seed for --random.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Trial budget for --random.
        #[arg(long, default_value_t = 1000)]
        trials: u64,
    },
    /// Enumerate the independent complements of one field inside another.
    Complements {
        /// Name of the field to complement (or trivial/discrete).
        #[arg(long)]
        of: String,
        /// Name of the ambient field (or trivial/discrete).
        #[arg(long = "in")]
        ambient: String,
        /// Instance file declaring the named fields.
        #[arg(long)]
        file: PathBuf,
    },
    /// Show a named example, check its pinned facts, or emit it as an
    /// instance file.
    Catalog {
        /// Example id, e.g. dist-fail or vanishing.
        id: String,
        /// Level for the sign-sequence examples (default 1, max 12).
        #[arg(long)]
        level: Option<usize>,
        /// Print the entry as an instance file instead of checking it.
        #[arg(long)]
        emit: bool,
    },
    /// Randomized falsification: hunt for counterexamples to a law.
    Search {
        /// Law id to attack.
        #[arg(long)]
        law: String,
        /// soundness = respect hypotheses; counterexample = ignore them.
        #[arg(long, value_enum)]
        mode: SearchMode,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 10000)]
        budget: u64,
        /// Largest generated support size.
        #[arg(long, default_value_t = 6)]
        max_support: usize,
        /// Raw weights are drawn from 1..=weight-bound.
        #[arg(long, default_value_t = 8)]
        weight_bound: u64,
        /// Allow zero-probability outcomes in generated spaces.
        #[arg(long)]
        allow_null: bool,
    },
}

fn dispatch(cli: Cli) -> CliResult<Output> {
    let structured = cli.format == Format::Structured;
    match cli.cmd {
        Cmd::Eval { file } => cmd_eval(&file, structured),
        Cmd::Laws {
            law,
            file,
            random,
            seed,
            trials,
        } => cmd_laws(&law, file.as_deref(), random, seed, trials, structured),
        Cmd::Complements { of, ambient, file } => {
            cmd_complements(&of, &ambient, &file, structured)
        }
        Cmd::Catalog { id, level, emit } => cmd_catalog(&id, level, emit, structured),
        Cmd::Search {
            law,
            mode,
            seed,
            budget,
            max_support,
            weight_bound,
            allow_null,
        } => cmd_search(
            &law,
            mode.into(),
            seed,
            budget,
            max_support,
            weight_bound,
            allow_null,
            structured,
        ),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(out) => {
            print!("{}", out.text);
            ExitCode::from(out.code as u8)
        }
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(2)
        }
    }
}
