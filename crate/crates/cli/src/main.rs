mod cli;
mod commands;
mod error;
mod report;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use cli::{Cli, OutputFormat};
use error::exit;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // help and version requests are not failures
            let code = if e.use_stderr() { exit::IO_OR_PARSE } else { exit::OK };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let report = match commands::run(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.exit_code());
        }
    };
    let color = cli.output == OutputFormat::Pretty && std::env::var_os("NO_COLOR").is_none_or(|v| v.is_empty());
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    if let Err(e) = report.render(cli.output, color, &mut out).and_then(|_| out.flush()) {
        eprintln!("error: writing output: {e}");
        return ExitCode::from(exit::IO_OR_PARSE);
    }
    if report.failed {
        eprintln!("verification failed");
        ExitCode::from(exit::VERIFICATION)
    } else {
        ExitCode::from(exit::OK)
    }
}
