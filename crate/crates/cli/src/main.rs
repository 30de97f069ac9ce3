mod args;
mod commands;
mod output;

use std::io::{self, Write};
use std::process::ExitCode;

use clap::Parser;

use args::Cli;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (name, params) = commands::parameters(&cli);
    let code = match commands::run(&cli) {
        Ok(report) => {
            let mut out = io::stdout().lock();
            if report.emit(cli.format, &mut out).and_then(|_| out.flush()).is_err() {
                return ExitCode::from(1);
            }
            report.exit_code
        }
        Err(e) => {
            let _ = e.emit(&name, &params, cli.format);
            e.kind.exit_code()
        }
    };
    ExitCode::from(code as u8)
}
