use std::process::ExitCode;

use clap::Parser;
use tdab_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli, std::io::stdout().lock()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("tdab: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
