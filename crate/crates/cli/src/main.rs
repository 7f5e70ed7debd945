use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

mod commands;
mod demo;

use commands::CliError;

#[derive(Parser)]
#[command(
    name = "cptkit",
    version,
    about = "Choquet, Šipoš and CPT evaluation on finite state spaces"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FunctionalKind {
    Choquet,
    Sipos,
    Cpt,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Table,
    Json,
}

#[derive(clap::Args, Debug, Clone)]
pub struct FunctionalArgs {
    /// Functional to evaluate.
    #[arg(long, value_enum)]
    pub functional: FunctionalKind,
    /// Capacity JSON file. `cpt` takes two (gains, then losses) unless `--symmetric`.
    #[arg(long = "capacity", required = true)]
    pub capacities: Vec<PathBuf>,
    /// Use the single capacity for both gains and losses (`cpt` only).
    #[arg(long)]
    pub symmetric: bool,
    /// Loss-aversion coefficient (`cpt` only).
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: Option<f64>,
    /// Comparison tolerance.
    #[arg(long, default_value_t = cptkit::DEFAULT_EPS)]
    pub tolerance: f64,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate every act in a CSV file.
    Eval {
        #[command(flatten)]
        functional: FunctionalArgs,
        /// Acts CSV file.
        #[arg(long)]
        acts: PathBuf,
        #[arg(long, value_enum, default_value_t = OutputFormat::Table)]
        format: OutputFormat,
    },
    /// Check a functional against the CPT characterization and extract its parameters.
    Verify {
        #[command(flatten)]
        functional: FunctionalArgs,
        /// Seed for the random pairs.
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Number of random pairs per check.
        #[arg(long, default_value_t = 10_000)]
        pairs: usize,
    },
    /// Print the gain-loss hedging example.
    Demo {
        #[arg(long)]
        json: bool,
    },
    /// Recover loss aversion from alpha,beta,gamma certainty-equivalent rows.
    Elicit {
        #[arg(long)]
        input: PathBuf,
        /// Output CSV; stdout when omitted.
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long, default_value_t = cptkit::DEFAULT_EPS)]
        tolerance: f64,
    },
}

fn run(cli: Cli) -> Result<String, CliError> {
    match cli.command {
        Command::Eval {
            functional,
            acts,
            format,
        } => commands::eval(&functional, &acts, format),
        Command::Verify {
            functional,
            seed,
            pairs,
        } => commands::verify(&functional, seed, pairs),
        Command::Demo { json } => Ok(if json { demo::json() } else { demo::table() }),
        Command::Elicit {
            input,
            output,
            tolerance,
        } => commands::elicit(&input, output.as_deref(), tolerance),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(CliError::Failed { output, message }) => {
            print!("{output}");
            eprintln!("error: {message}");
            ExitCode::from(4)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
