use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use cpv::commands::{self, Outcome, ProbeTarget};
use cpv::config::parse_gammas;
use cpv::error::{input_error, Classify};
use cpv::verify::Suite;
use cpv::CliError;

/// Point vortices on CP2: simulation, momentum polytopes, classification and verification.
#[derive(Parser)]
#[command(name = "cpv", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Integrate a configuration; writes trajectory.csv and trajectory.json.
    Simulate {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Sample the momentum polytope; writes polytope.csv, landmarks.csv and polytope.json.
    Polytope {
        #[arg(long)]
        gammas: String,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Run a verification suite and print a pass/fail JSON report.
    Verify {
        #[arg(long, value_parser = suite_names())]
        suite: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the isotropy type, momentum and relative-equilibrium data of a configuration.
    Classify {
        #[arg(long)]
        config: PathBuf,
    },
    /// Multi-start search of a momentum fiber (three vortices).
    Probe {
        #[arg(long)]
        gammas: String,
        /// interior, a, b, c1, c2 or c3.
        #[arg(long, default_value = "interior")]
        target: String,
        /// Number of random starts.
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn suite_names() -> clap::builder::PossibleValuesParser {
    let mut names: Vec<&'static str> = Suite::ALL.iter().map(|s| s.name()).collect();
    names.push("all");
    clap::builder::PossibleValuesParser::new(names)
}

/// Caps the worker pool at `CPV_THREADS` when set.
fn configure_threads() -> Result<(), CliError> {
    let Ok(v) = std::env::var("CPV_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .parse()
        .ok()
        .filter(|n| *n > 0)
        .ok_or_else(|| input_error(format!("CPV_THREADS must be a positive integer, got `{v}`")))?;
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().runtime()
}

fn run(cli: Cli) -> Result<Outcome, CliError> {
    configure_threads()?;
    match cli.command {
        Command::Simulate { config, out } => commands::simulate(&config, &out),
        Command::Polytope {
            gammas,
            samples,
            seed,
            out,
        } => commands::polytope(&parse_gammas(&gammas).input()?, samples, seed, &out),
        Command::Verify { suite, out } => commands::verify(Suite::from_name(&suite), out.as_deref()),
        Command::Classify { config } => commands::classify(&config),
        Command::Probe {
            gammas,
            target,
            samples,
            seed,
            out,
        } => {
            let target: ProbeTarget = target.parse().input()?;
            commands::probe(&parse_gammas(&gammas).input()?, target, samples, seed, out.as_deref())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(outcome) => {
            println!("{}", serde_json::to_string_pretty(&outcome.report).expect("reports serialize"));
            ExitCode::from(outcome.code)
        }
        Err(e) => {
            eprintln!("cpv: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
