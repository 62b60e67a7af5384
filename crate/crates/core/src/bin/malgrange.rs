use std::io::IsTerminal;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};

use malgrange_core::commands::{run, RunOptions};
use malgrange_core::corpus::DEFAULT_SEED;
use malgrange_core::session::{CommandKind, Session};
use malgrange_core::Error;

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Command {
    Analyze,
    Torsion,
    Defect,
    Hom,
    Verify,
    Gb,
}

impl From<Command> for CommandKind {
    fn from(c: Command) -> Self {
        match c {
            Command::Analyze => CommandKind::Analyze,
            Command::Torsion => CommandKind::Torsion,
            Command::Defect => CommandKind::Defect,
            Command::Hom => CommandKind::Hom,
            Command::Verify => CommandKind::Verify,
            Command::Gb => CommandKind::Gb,
        }
    }
}

/// Exact module theory over Q[x1..xn]: torsion, defects and controllability.
#[derive(Parser, Debug)]
#[command(name = "malgrange", version)]
struct Cli {
    command: Command,
    /// Session file; `verify` falls back to the built-in corpus without one.
    session: Option<PathBuf>,
    /// Names from the session to act on.
    names: Vec<String>,
    #[arg(long)]
    json: bool,
    /// Seed for the random part of the built-in corpus.
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Also run the functor suites (defect coherence, adjunction).
    #[arg(long)]
    all: bool,
}

fn use_color() -> bool {
    match std::env::var("MALGRANGE_COLOR").as_deref() {
        Ok("never") => false,
        _ => std::io::stdout().is_terminal(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let session = match &cli.session {
        None => None,
        Some(path) => {
            let text = match std::fs::read_to_string(path) {
                Ok(t) => t,
                Err(e) => {
                    eprintln!("error: {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            };
            match Session::parse(&text) {
                Ok(s) => Some(s),
                Err(e @ Error::Parse { .. }) => {
                    eprintln!("error: {}:{e}", path.display());
                    return ExitCode::from(2);
                }
                Err(e) => {
                    eprintln!("error: {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            }
        }
    };
    let opts = RunOptions {
        json: cli.json,
        seed: cli.seed,
        all: cli.all,
        color: !cli.json && use_color(),
    };
    match run(session.as_ref(), cli.command.into(), &cli.names, &opts) {
        Ok(out) => {
            print!("{}", out.text);
            ExitCode::from(out.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
