use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use gwcross::cli::{run, Command, Direction, JobConfig, OutputFormat};

#[derive(Parser)]
#[command(name = "gwcross", version, about = "Exact GW / uGW / GV transforms via sine-power wall-crossing")]
struct Args {
    #[command(subcommand)]
    command: Cmd,
    /// Truncation order in u (exclusive).
    #[arg(long, global = true, allow_negative_numbers = true)]
    order: Option<i64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Convert an invariant table between conventions.
    Transform {
        #[arg(long, value_enum)]
        direction: Dir,
        #[arg(long)]
        input: PathBuf,
    },
    /// Extract GV invariants and check that they are integers.
    CheckIntegrality {
        #[arg(long)]
        input: PathBuf,
    },
    /// Run the internal identity checks.
    VerifyIdentities,
    /// Print the Hodge-insertion constants.
    Mu,
    /// Expand S^(2g-2+c).
    ExpandSine {
        #[arg(long, allow_negative_numbers = true)]
        g: i64,
        #[arg(long, allow_negative_numbers = true)]
        c: i64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Dir {
    GwToUgw,
    UgwToGw,
    GwToGv,
    GvToGw,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let (command, input_path, direction) = match args.command {
        Cmd::Transform { direction, input } => (
            Command::Transform,
            Some(input),
            Some(match direction {
                Dir::GwToUgw => Direction::GwToUgw,
                Dir::UgwToGw => Direction::UgwToGw,
                Dir::GwToGv => Direction::GwToGv,
                Dir::GvToGw => Direction::GvToGw,
            }),
        ),
        Cmd::CheckIntegrality { input } => (Command::CheckIntegrality, Some(input), None),
        Cmd::VerifyIdentities => (Command::VerifyIdentities, None, None),
        Cmd::Mu => (Command::Mu, None, None),
        Cmd::ExpandSine { g, c } => (Command::ExpandSine { g, c }, None, None),
    };
    let config = JobConfig {
        command,
        input_path,
        direction,
        order: args.order,
        output_format: match args.format {
            Format::Json => OutputFormat::Json,
            Format::Text => OutputFormat::Text,
        },
    };
    match run(&config) {
        Ok(outcome) => {
            if let Some(path) = &args.output {
                if let Err(e) = fs::write(path, &outcome.report) {
                    eprintln!("gwcross: {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            } else {
                print!("{}", outcome.report);
            }
            ExitCode::from(outcome.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("gwcross: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
