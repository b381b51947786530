use std::io::Write as _;
use std::process::ExitCode;

use clap::Parser;

use zeta_moments::cli::{dispatch, exit_code, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .ok();
    }
    match dispatch(&cli) {
        Ok(outcome) => {
            let write_result = match &cli.out {
                Some(path) if !matches!(cli.command, zeta_moments::cli::Command::Sieve { .. }) => {
                    std::fs::write(path, outcome.artifact.as_bytes())
                }
                _ => std::io::stdout().write_all(outcome.artifact.as_bytes()),
            };
            if let Err(e) = write_result {
                eprintln!("error: {e}");
                return ExitCode::from(1);
            }
            if outcome.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e) as u8)
        }
    }
}
