use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use stringbv_cli::{catalog_listing, run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let Some(config) = cli.command.into_config() else {
        print!("{}", catalog_listing());
        return ExitCode::SUCCESS;
    };
    let outcome = run(&config);
    let mut out = std::io::stdout().lock();
    if outcome.exit_code == 2 {
        eprint!("{}", outcome.output);
    } else {
        let _ = out.write_all(outcome.output.as_bytes());
    }
    ExitCode::from(outcome.exit_code as u8)
}
