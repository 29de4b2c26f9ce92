//! Thin command-line front end: parse arguments, call into the library,
//! print JSON. Exit codes: 0 success, 1 verification failure, 2 input
//! error, 3 enumeration guard exceeded.

mod commands;

use std::process::ExitCode;

use clap::Parser;

use commands::Cli;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(commands::exit_code_for(&err))
        }
    }
}
