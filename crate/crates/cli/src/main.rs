mod args;
mod commands;
mod config;
mod error;
mod output;
mod validate;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};
use error::CliError;

fn run() -> Result<(), CliError> {
    let argv = config::expand(std::env::args_os().collect())?;
    let cli = Cli::try_parse_from(argv).unwrap_or_else(|e| e.exit());
    let out = cli.out.as_deref();
    match &cli.command {
        Command::Eval(a) => commands::eval(a, out),
        Command::Validate(a) => validate::run(a),
        Command::Sample(a) => commands::sample(a, out),
        Command::Modes(a) => commands::modes(a, out),
        Command::Inflection(a) => commands::inflection(a, out),
        Command::Classify(a) => commands::classify_cmd(a, out),
        Command::Measure(a) => commands::measure(a),
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
