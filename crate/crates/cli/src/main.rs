mod args;
mod commands;
mod error;
mod output;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};
use error::CliError;
use output::{write_atomic, Report, Status};

fn run(cli: &Cli) -> Result<Status, CliError> {
    if let Some(n) = cli.global.threads {
        if n == 0 {
            return Err(CliError::Usage("--threads must be at least 1".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Usage(format!("cannot configure thread pool: {e}")))?;
    }
    let seed = cli.global.seed;
    let (name, outcome) = match &cli.command {
        Command::Model(a) => ("model", commands::model(a, seed)?),
        Command::Spectrum(a) => ("spectrum", commands::spectrum(a)?),
        Command::Evolve(a) => ("evolve", commands::evolve(a)?),
        Command::Mereology(a) => ("mereology", commands::mereology(a, seed)?),
        Command::Locality(a) => ("locality", commands::locality(a, seed)?),
        Command::Geometry(a) => ("geometry", commands::geometry(a)?),
    };
    let report = Report {
        tool: "emergence",
        version: env!("CARGO_PKG_VERSION"),
        command: name,
        seed,
        config: outcome.config,
        status: outcome.status,
        result: outcome.result,
    };
    let text = report.render();
    match &cli.global.report {
        Some(path) => write_atomic(path, &text)?,
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| CliError::Output("stdout".into(), e))?,
    }
    Ok(report.status)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(Status::Ok) => ExitCode::SUCCESS,
        Ok(Status::BelowThreshold) => {
            eprintln!("emergence: search finished above the requested tolerance");
            ExitCode::from(3)
        }
        Err(e) => {
            eprintln!("emergence: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
