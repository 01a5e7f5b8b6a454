use std::process::ExitCode;

use clap::Parser;

mod args;
mod commands;
mod table;

use args::{Cli, Command};

fn threads(command: &Command) -> Option<usize> {
    match command {
        Command::Detect { exp, .. }
        | Command::Approximate { exp, .. }
        | Command::Regimes { exp }
        | Command::Lowerbound { exp, .. } => exp.threads,
        Command::Dispersion { .. } => None,
    }
}

fn main() -> ExitCode {
    let args = match args::with_config(std::env::args().collect()) {
        Ok(args) => args,
        Err(msg) => {
            eprintln!("rankone: {msg}");
            return ExitCode::from(2);
        }
    };
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    if let Some(n) = threads(&cli.command) {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
        {
            eprintln!("rankone: cannot start {n} threads: {e}");
            return ExitCode::from(4);
        }
    }
    match commands::run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("rankone: {failure}");
            ExitCode::from(failure.exit_code())
        }
    }
}
