use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};

use renyi_uncertainty::cli::fuzz::FuzzConfig;
use renyi_uncertainty::cli::{self, parse_range, CliError, CommandOutput, EXIT_INPUT};

#[derive(Parser, Debug)]
#[command(name = "renyi-uncertainty", version, about = "Rényi-entropy uncertainty bounds for POVMs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate every applicable bound for an instance file.
    Check {
        file: PathBuf,
        #[arg(long)]
        json: bool,
        /// POVM completeness tolerance (default 1e-9).
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Reproduce the |0> vs |+> discrimination example.
    PaperExample {
        /// Conjugate orders (alpha, beta) with 1/alpha + 1/beta = 2.
        #[arg(long, num_args = 2, value_names = ["A", "B"], allow_negative_numbers = true)]
        pair: Option<Vec<f64>>,
        #[arg(long)]
        json: bool,
    },
    /// Check every bound on seeded random instances.
    Fuzz {
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        trials: usize,
        /// Inclusive dimension range, e.g. 2..6.
        #[arg(long)]
        dims: String,
        /// Inclusive outcome-count range.
        #[arg(long, default_value = "2..5")]
        outcomes: String,
        /// Only rank-one POVM elements (also checks norm saturation).
        #[arg(long)]
        rank_one: bool,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long)]
        json: bool,
    },
}

fn run(command: Command) -> Result<CommandOutput, CliError> {
    match command {
        Command::Check { file, json, tol } => cli::cmd_check(&file, json, tol),
        Command::PaperExample { pair, json } => {
            cli::cmd_paper_example(pair.map(|p| (p[0], p[1])), json)
        }
        Command::Fuzz {
            seed,
            trials,
            dims,
            outcomes,
            rank_one,
            jobs,
            json,
        } => {
            let config = FuzzConfig {
                seed,
                trials,
                dims: parse_range(&dims)?,
                outcomes: parse_range(&outcomes)?,
                rank_one,
                jobs,
            };
            cli::cmd_fuzz(&config, json)
        }
    }
}

fn main() -> ExitCode {
    let args = match Cli::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(EXIT_INPUT as u8),
            };
        }
    };
    match run(args.command) {
        Ok(out) => {
            print!("{}", out.text);
            ExitCode::from(out.exit_code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
