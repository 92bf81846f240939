//! Command-line front end for `cliffinv`, plus the JSON formats and the batch
//! verification and benchmark drivers it uses.

pub mod args;
pub mod bench;
pub mod commands;
pub mod json;
pub mod sampling;
pub mod verify;

use std::ffi::OsString;
use std::io::Write;

use clap::error::ErrorKind;
use clap::Parser;

use args::{Cli, Command};
use commands::{CliError, EXIT_OK, EXIT_USAGE};

/// Parses `args` (including the program name), runs the command and returns
/// the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let help = matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            let target: &mut dyn Write = if help { out } else { err };
            let _ = write!(target, "{}", e.render());
            return if help { EXIT_OK } else { EXIT_USAGE };
        }
    };
    match dispatch(&cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn dispatch(command: &Command, out: &mut dyn Write) -> Result<i32, CliError> {
    match command {
        Command::Inv { sig, input, output } => commands::inv(out, sig, input, output.json),
        Command::Disc {
            sig,
            input,
            closed_form,
            output,
        } => commands::disc(out, sig, input, *closed_form, output.json),
        Command::Map {
            sig,
            name,
            input,
            output,
        } => commands::map(out, sig, *name, input, output.json),
        Command::DeltaSearch { n, grades, output } => commands::delta_search(out, *n as usize, *grades, output.json),
        Command::Verify {
            sig,
            batch,
            inject_fault,
            output,
        } => commands::verify(out, sig, batch, *inject_fault, output.json),
        Command::Bench { sig, batch, output } => commands::bench_cmd(out, sig, batch, output.json),
    }
}
