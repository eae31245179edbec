use std::process::ExitCode;

use clap::Parser;
use qhyper_cli::run::{EXIT_CONFIG, EXIT_OK};
use qhyper_cli::{run, Cli, RunConfig};

fn main() -> ExitCode {
    let config = match RunConfig::from_cli(Cli::parse()) {
        Ok(c) => c,
        Err(msg) => {
            eprintln!("configuration error: {msg}");
            return ExitCode::from(EXIT_CONFIG as u8);
        }
    };
    let outcome = match run(&config) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("{e}");
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    let written = match &config.output_path {
        Some(path) => std::fs::write(path, &outcome.text).map_err(|e| format!("{}: {e}", path.display())),
        None => {
            print!("{}", outcome.text);
            Ok(())
        }
    };
    if let Err(msg) = written {
        eprintln!("configuration error: {msg}");
        return ExitCode::from(EXIT_CONFIG as u8);
    }
    if let Some(report) = &outcome.report {
        let s = &report.summary;
        eprintln!("{} checks: {} passed, {} failed, {} degenerate", s.total, s.passed, s.failed, s.degenerate);
    }
    debug_assert!(outcome.exit_code != EXIT_OK || outcome.report.as_ref().is_none_or(|r| r.summary.failed == 0));
    ExitCode::from(outcome.exit_code as u8)
}
