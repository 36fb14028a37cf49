//! `geomforge` command-line front end. Every run prints one JSON report on
//! standard output and exits with 0 (all checks pass), 1 (a check failed),
//! 2 (bad input) or 3 (budget exceeded).

mod args;
mod commands;
mod report;

use std::process::ExitCode;

use clap::Parser;

use args::Cli;
use report::{emit, error_report, ExitKind};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            let argv: Vec<String> = std::env::args().skip(1).collect();
            let report = error_report(argv.join(" "), ExitKind::Parse, e.to_string().trim().to_string());
            emit(&report, false);
            return ExitCode::from(ExitKind::Parse.code());
        }
    };
    let report = commands::run(&cli);
    emit(&report, cli.summary);
    ExitCode::from(report.exit.code())
}
