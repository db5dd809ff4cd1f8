use std::process::ExitCode;

use clap::Parser;
use porac_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        if threads == 0 {
            eprintln!("error: --threads must be at least 1");
            return ExitCode::from(2);
        }
        fur_porac::par::set_threads(threads);
    }
    match run(&cli) {
        Ok(report) => {
            print!("{}", cli.render(&report));
            if report.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            eprintln!("run `porac --help` for usage");
            ExitCode::from(2)
        }
    }
}
