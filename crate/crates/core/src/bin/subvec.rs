use std::process::ExitCode;

use clap::Parser;
use subvec::cli::{execute, Cli};

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match execute(&cli.command) {
        Ok(run) => {
            for line in &run.summary {
                println!("{line}");
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("subvec: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
