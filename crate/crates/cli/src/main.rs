use std::process::ExitCode;

use bifix_cli::{run, Cli};
use clap::Parser;

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("bifix: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
