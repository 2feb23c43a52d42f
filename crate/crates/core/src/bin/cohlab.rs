use std::process::ExitCode;

use clap::Parser;
use cohlab::cli::{run, Cli};

fn main() -> ExitCode {
    // Usage errors exit 1; 2 is reserved for missed solver tolerances.
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(out) => {
            for f in &out.files {
                println!("{}", f.display());
            }
            if out.failures.is_empty() {
                ExitCode::SUCCESS
            } else {
                for f in &out.failures {
                    eprintln!("tolerance: {f}");
                }
                ExitCode::from(2)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
