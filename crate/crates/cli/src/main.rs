use std::process::ExitCode;

use clap::Parser;

use intdiff_cli::commands::{execute, truncation_config, Cli, CAP_ENV};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let var = std::env::var(CAP_ENV).ok();
    let (code, out) = match truncation_config(var.as_deref()) {
        Ok(cfg) => execute(&cli.command, &cfg),
        Err(e) => (e.exit_code(), e.to_json()),
    };
    println!("{out}");
    ExitCode::from(code as u8)
}
