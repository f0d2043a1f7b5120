mod args;
mod commands;
mod error;
mod output;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};
use commands::Session;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let session = Session { quiet: cli.quiet, json: cli.json, workers: cli.workers };
    let outcome = match &cli.command {
        Command::Enumerate(a) => commands::enumerate(&session, a),
        Command::Ifq(a) => commands::ifq(&session, a),
        Command::Density(a) => commands::density(&session, a),
        Command::Variance(a) => commands::variance(&session, a),
        Command::Rmt(a) => commands::rmt(&session, a),
        Command::Validate(a) => commands::validate(&session, a),
        Command::Scan(a) => commands::scan(&session, a),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
