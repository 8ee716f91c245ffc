//! Reports behind the `symres` command-line tool.
//!
//! Each subcommand builds a serializable report; [`output::emit`] writes it
//! as CSV tables or a single JSON document.

pub mod args;
pub mod commands;
pub mod error;
pub mod output;

use std::path::PathBuf;

use args::{Cli, Command};
use error::CliError;
use output::emit;

/// Runs one parsed invocation, returning the files written.
pub fn run(cli: &Cli) -> Result<Vec<PathBuf>, CliError> {
    match &cli.command {
        Command::Dims(a) => emit(&commands::cmd_dims(a)?, &a.out),
        Command::PageCurve(a) => emit(&commands::cmd_page_curve(a)?, &a.out),
        Command::Sample(a) => emit(&commands::cmd_sample(a)?, &a.out),
        Command::Asymptotics(a) => emit(&commands::cmd_asymptotics(a)?, &a.out),
        Command::Examples(out) => emit(&commands::cmd_examples()?, out),
    }
}
