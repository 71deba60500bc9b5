//! Command-line front end: config layering, subcommand dispatch and artifact
//! emission. Every artifact carries the resolved config as `# config: `
//! comment lines, so `--config <artifact>` replays it.

mod args;
pub mod config;
mod dispatch;

use std::process::ExitCode;

use clap::Parser;

pub use args::{Cli, SubCommand};
pub use config::{parse_config, Command, RunConfig, WORKERS_ENV};
pub use dispatch::dispatch;

use crate::error::Error;

/// Exit status for an error: 2 for configuration problems, 1 otherwise.
pub fn exit_code(err: &Error) -> u8 {
    match err {
        Error::Config { .. } | Error::Parse(_) => 2,
        _ => 1,
    }
}

/// Parses the process arguments, runs the subcommand and reports errors as
/// one line on stderr.
pub fn main_entry() -> ExitCode {
    let cli = Cli::parse();
    match run_cli(&cli) {
        Ok(paths) => {
            for p in paths {
                eprintln!("wrote {}", p.display());
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("lurker: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

pub fn run_cli(cli: &Cli) -> crate::Result<Vec<std::path::PathBuf>> {
    let file = match &cli.config {
        Some(path) => Some(std::fs::read_to_string(path)?),
        None => None,
    };
    let overrides = cli.overrides().map_err(Error::Parse)?;
    let env_workers = std::env::var(WORKERS_ENV).ok();
    let cfg = parse_config(cli.command.into(), file.as_deref(), &overrides, env_workers.as_deref())?;
    dispatch(&cfg)
}
