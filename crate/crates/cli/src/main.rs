//! `fibpow` command-line tool.
//!
//! Exit codes: 0 success or agreement, 1 usage error, 2 mathematical
//! disagreement, 3 resource guard.

mod args;
mod commands;

use std::io::Write;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;
use fibpow::Oracle;

use crate::args::Cli;
use crate::commands::{CliError, Status};

const EXIT_USAGE: u8 = 1;
const EXIT_DISAGREE: u8 = 2;
const EXIT_GUARD: u8 = 3;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let _ = err.print();
            return match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(EXIT_USAGE),
            };
        }
    };

    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(jobs) = cli.jobs {
        pool = pool.num_threads(jobs as usize);
    }
    let pool = match pool.build() {
        Ok(pool) => pool,
        Err(err) => {
            eprintln!("error: cannot start worker pool: {err}");
            return ExitCode::from(EXIT_USAGE);
        }
    };

    let oracle = Oracle::new(cli.j_max);
    let format = cli.format;
    let result = pool.install(|| commands::run(cli.command, format, &oracle));

    match result {
        Ok(output) => {
            let mut stdout = std::io::stdout().lock();
            let text = output.text.trim_end_matches('\n');
            if writeln!(stdout, "{text}").is_err() {
                return ExitCode::from(EXIT_USAGE);
            }
            match output.status {
                Status::Success => ExitCode::SUCCESS,
                Status::Disagreement => ExitCode::from(EXIT_DISAGREE),
            }
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(CliError::Guard(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_GUARD)
        }
    }
}
