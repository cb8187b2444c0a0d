//! `conic`: spectra, figure sweeps, inverse design and oracle checks for the
//! conic oscillator with point interactions.

mod args;
mod commands;
mod output;

use std::process::ExitCode;

use clap::Parser;

use crate::args::{Cli, Command};
use crate::commands::{CliError, Common, Report, Status};

const USAGE: u8 = 1;
const SOLVER: u8 = 2;
const VERIFY: u8 = 3;

fn header(cli: &Cli, common: &Common, notes: &[String]) -> String {
    let argv: Vec<String> = std::env::args().skip(1).collect();
    let mut parts = vec![
        format!("conic {}", env!("CARGO_PKG_VERSION")),
        format!("args: {}", argv.join(" ")),
        format!("tol={:e}", common.tol),
    ];
    if let Some(n) = cli.trunc {
        parts.push(format!("trunc={n}"));
    }
    parts.extend(notes.iter().cloned());
    parts.join(" | ")
}

fn run(cli: &Cli) -> Result<Report, CliError> {
    let tol = cli.tol.unwrap_or(1e-2);
    if !(tol.is_finite() && tol > 0.0) {
        return Err(CliError::Usage(format!(
            "--tol must be positive, got {tol}"
        )));
    }
    let common = Common {
        kernel: cli.kernel.form(),
        tol,
        trunc: cli.trunc,
    };
    match &cli.command {
        Command::Spectrum { model } => commands::spectrum(model, common),
        Command::Sweep { figure } => commands::sweep(figure, common),
        Command::Inverse(a) => commands::inverse(a, common),
        Command::Verify { model } => commands::verify(model, common),
        Command::Green(a) => commands::green(a, common),
        Command::Airy(a) => commands::airy(a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let report = match run(&cli) {
        Ok(r) => r,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(USAGE);
        }
        Err(CliError::Solver(msg)) => {
            eprintln!("solver failure: {msg}");
            return ExitCode::from(SOLVER);
        }
    };
    let common = Common {
        kernel: cli.kernel.form(),
        tol: cli.tol.unwrap_or(1e-2),
        trunc: cli.trunc,
    };
    if let Err(e) = report.table.write(
        &header(&cli, &common, &report.notes),
        cli.format,
        cli.out.as_deref(),
    ) {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            return ExitCode::SUCCESS;
        }
        eprintln!("error: cannot write output: {e}");
        return ExitCode::from(SOLVER);
    }
    match report.status {
        Status::Ok => ExitCode::SUCCESS,
        Status::Empty => {
            eprintln!("warning: no solutions found");
            ExitCode::from(SOLVER)
        }
        Status::Failed => {
            eprintln!("verification failed");
            ExitCode::from(VERIFY)
        }
    }
}
