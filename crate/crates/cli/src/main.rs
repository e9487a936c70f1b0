//! `hyperff` command-line driver.
//!
//! Errors are reported as one stderr line,
//! `error: category=<usage|parse|numeric|infeasible|io> code=<n> message=...`,
//! and the process exits with the category's code (2, 3, 4, 5, or 1 for I/O).
//! Outputs written before a failure are removed.

mod args;
mod commands;
mod error;
mod output;

use clap::error::ErrorKind;
use clap::Parser;

use args::{Cli, Command};
use error::CliError;

fn run(cli: Cli) -> Result<(), CliError> {
    if let Some(n) = cli.threads {
        if n == 0 {
            return Err(CliError::usage("--threads must be at least 1"));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::usage(format!("thread pool: {e}")))?;
    }
    match &cli.command {
        Command::Generate(a) => commands::generate(a),
        Command::Nullmodel(a) => commands::nullmodel(a),
        Command::Analyze(a) => commands::analyze(a),
        Command::Fit(a) => commands::fit(a),
        Command::Decompose(a) => commands::decompose(a),
        Command::Evolve(a) => commands::evolve(a),
    }
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion)
                || e.kind() == ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand
            {
                let _ = e.print();
                let code = if e.kind() == ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand { 2 } else { 0 };
                std::process::exit(code);
            }
            // keep clap's message, drop its usage/help trailer
            let rendered = e.to_string();
            let message: Vec<&str> = rendered
                .lines()
                .map(str::trim)
                .take_while(|l| !l.starts_with("Usage:") && !l.starts_with("For more information"))
                .filter(|l| !l.is_empty())
                .collect();
            let message = message.join(" ");
            eprintln!("{}", CliError::usage(message.trim_start_matches("error: ")).line());
            std::process::exit(2);
        }
    };
    if let Err(e) = run(cli) {
        eprintln!("{}", e.line());
        std::process::exit(e.category.exit_code());
    }
}
