use clap::Parser;

use aluthge_cli::{run, Cli, CliError};

fn main() {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            // help and version requests are not errors
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    match run(&cli) {
        Ok(()) => {}
        Err(e @ CliError::Usage(_)) => {
            eprintln!("{e}");
            std::process::exit(1);
        }
        Err(e @ CliError::Invariant(_)) => {
            eprintln!("{e}");
            std::process::exit(2);
        }
    }
}
