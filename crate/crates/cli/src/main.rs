mod args;
mod commands;
mod real_fn;

use std::process::ExitCode;

use clap::Parser;

use args::Cli;
use commands::{run, Verdict};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(Verdict::Pass) => ExitCode::SUCCESS,
        Ok(Verdict::Fail) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
