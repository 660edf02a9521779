//! `hamsym`: permutation symmetries of Hamiltonian matrices.

use std::num::{NonZeroU64, NonZeroUsize};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use hamsym::models::parse_bindings;
use hamsym::perm::PermError;
use hamsym::report::{
    self, cmd_decompose, cmd_find, cmd_group, cmd_models, models_text, CommandError, InputSource,
    LoadedInput, Report,
};
use hamsym::{Perm, SearchConfig, SearchMode};

#[derive(Parser)]
#[command(
    name = "hamsym",
    version,
    about = "Find permutation symmetries of Hamiltonian matrices"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate all permutation matrices commuting with H
    Find {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        search: SearchArgs,
        /// Report only the number of symmetries
        #[arg(long)]
        count_only: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Enumerate the symmetries and analyze the group they form
    Group {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        search: SearchArgs,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Split the state space with an involutive symmetry
    Decompose {
        #[command(flatten)]
        input: InputArgs,
        /// Involution as a 0-based image array, e.g. 3,2,1,0
        #[arg(long)]
        perm: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// List the built-in models and their parameters
    Models {
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Args)]
struct InputArgs {
    /// Built-in model name (see `hamsym models`)
    #[arg(long, conflicts_with = "input", required_unless_present = "input")]
    model: Option<String>,
    /// Matrix file: header `rows cols`, then one row of entries per line
    #[arg(long)]
    input: Option<PathBuf>,
    /// Parameter binding name=value; repeatable. Unbound parameters stay symbolic
    #[arg(long = "param", value_name = "NAME=VALUE")]
    params: Vec<String>,
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long, value_enum, default_value_t = Mode::Pruned)]
    mode: Mode,
    /// Stop after this many symmetries
    #[arg(long)]
    max_results: Option<NonZeroUsize>,
    /// Stop after visiting this many search nodes
    #[arg(long)]
    node_budget: Option<NonZeroU64>,
    /// Worker threads; 1 keeps the serial visit order
    #[arg(long, default_value = "1")]
    jobs: NonZeroUsize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    /// Check each complete permutation
    Leaf,
    /// Reject partial assignments early
    Pruned,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

impl SearchArgs {
    fn config(&self, count_only: bool) -> SearchConfig {
        SearchConfig {
            mode: match self.mode {
                Mode::Leaf => SearchMode::LeafCheck,
                Mode::Pruned => SearchMode::Pruned,
            },
            max_results: self.max_results,
            node_budget: self.node_budget,
            count_only,
            jobs: self.jobs,
        }
    }
}

fn load(args: &InputArgs) -> Result<LoadedInput, CommandError> {
    let params = parse_bindings(args.params.iter().map(String::as_str))?;
    let source = match (&args.model, &args.input) {
        (Some(name), _) => InputSource::Model { name: name.clone() },
        (None, Some(path)) => InputSource::File { path: path.clone() },
        (None, None) => unreachable!("clap requires --model or --input"),
    };
    report::load_input(&source, &params)
}

fn emit(report: &Report, format: Format) -> ExitCode {
    match format {
        Format::Text => print!("{}", report.to_text()),
        Format::Json => println!("{}", report.to_json()),
    }
    ExitCode::from(report.exit_code() as u8)
}

fn run(cli: Cli) -> Result<ExitCode, CommandError> {
    match cli.command {
        Command::Find {
            input,
            search,
            count_only,
            format,
        } => {
            let input = load(&input)?;
            Ok(emit(&cmd_find(&input, &search.config(count_only))?, format))
        }
        Command::Group {
            input,
            search,
            format,
        } => {
            let input = load(&input)?;
            Ok(emit(&cmd_group(&input, &search.config(false))?, format))
        }
        Command::Decompose {
            input,
            perm,
            format,
        } => {
            let input = load(&input)?;
            let perm: Perm = perm.parse().map_err(|e| match e {
                PermError::Syntax(_) => CommandError::Syntax(e.to_string()),
                _ => CommandError::Validation(e.to_string()),
            })?;
            Ok(emit(&cmd_decompose(&input, &perm)?, format))
        }
        Command::Models { format } => {
            let models = cmd_models();
            match format {
                Format::Text => print!("{}", models_text(&models)),
                Format::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&models).expect("model list serializes")
                ),
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
