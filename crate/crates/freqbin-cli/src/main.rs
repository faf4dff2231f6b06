//! `freqbin` — design and simulate frequency-bin Bell-state analyzers.

mod args;
mod commands;
mod manifest;

use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use args::{Cli, Command};
use commands::Globals;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };

    let globals = Globals {
        out: cli.out,
        seed: cli.seed,
        window_guard: cli.window_guard,
        quiet: cli.quiet,
    };
    let outcome = match &cli.command {
        Command::Synth(args) => commands::synth(&globals, args),
        Command::Spectra(args) => commands::spectra(&globals, args),
        Command::Bsa(args) => commands::bsa(&globals, args),
        Command::Jitter(args) => commands::jitter(&globals, args),
        Command::Validate(args) => commands::validate(&globals, args),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
