use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use anyon_phases::cli::{self, Cli};

fn main() -> ExitCode {
    let args = Cli::parse();
    if !args.quiet {
        eprintln!("{}", cli::header());
    }
    match cli::run(&args) {
        Ok(out) => {
            let _ = std::io::stdout().write_all(out.text.as_bytes());
            ExitCode::from(out.code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
