use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;
use detvar_cli::{run, Cli, Context};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let ctx = match Context::new(cli.characteristic, cli.tmax, cli.inject_fault) {
        Ok(ctx) => ctx,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    let start = Instant::now();
    match run(&cli.command, &ctx) {
        Ok(outcome) => {
            if cli.json {
                println!("{}", outcome.report.to_json());
            } else {
                print!("{}", outcome.render_text(start.elapsed()));
            }
            ExitCode::from(outcome.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
