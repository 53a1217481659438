mod commands;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::{CompareArgs, ComputeArgs, Failure, VerifyArgs};

#[derive(Parser)]
#[command(
    name = "opr",
    version,
    about = "Operator radii and machine-checked inequalities between them"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute a radius or norm of the matrices in a file.
    Compute(ComputeArgs),
    /// Run registry checks on seeded random inputs, or replay recorded violations.
    Verify(VerifyArgs),
    /// Recompute the twelve published example values.
    ReproducePaper {
        #[arg(long)]
        json: bool,
    },
    /// Compare the sharpness of upper bounds for the off-diagonal block radius.
    Compare(CompareArgs),
    /// List the registered checks.
    List,
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(raw) = std::env::var("OPR_THREADS") else {
        return Ok(());
    };
    let threads: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Failure::usage(format!("OPR_THREADS must be a positive integer, got `{raw}`")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| Failure::usage(format!("cannot configure thread pool: {e}")))
}

fn run(cli: Cli) -> Result<ExitCode, Failure> {
    configure_threads()?;
    match cli.command {
        Command::Compute(args) => commands::compute(args),
        Command::Verify(args) => commands::verify(args),
        Command::ReproducePaper { json } => commands::reproduce_paper(json),
        Command::Compare(args) => commands::compare(args),
        Command::List => commands::list(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(failure) => {
            eprintln!("error: {:#}", failure.error);
            ExitCode::from(failure.code)
        }
    }
}
