use std::process::ExitCode;

use clap::Parser;

use qhc::cli::{run, Cli, EXIT_INPUT};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            print!("{}", out.render(cli.format));
            ExitCode::from(out.exit_code())
        }
        Err(e) => {
            eprintln!("error: {}", e);
            ExitCode::from(EXIT_INPUT)
        }
    }
}
