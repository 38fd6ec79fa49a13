//! Command-line front end for the `thinning` library.

pub mod args;
pub mod commands;
pub mod format;
pub mod report;

use std::fs;
use std::io::{self, Write};

use serde::Serialize;

pub use args::{Cli, Command, OutputFormat};
pub use commands::CommandError;
use report::Render;

/// Render a report in the requested format.
pub fn render<R: Render + Serialize>(report: &R, format: OutputFormat) -> String {
    match format {
        OutputFormat::Text => report.text(),
        OutputFormat::Csv => report.csv(),
        OutputFormat::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("reports contain only finite numbers");
            s.push('\n');
            s
        }
    }
}

/// Run one command and return its rendered output.
pub fn execute(cli: &Cli) -> Result<String, CommandError> {
    let f = cli.format;
    let out = match &cli.command {
        Command::Opt(a) => render(&commands::opt(a)?, f),
        Command::Tables(a) => {
            let t = commands::tables(a)?;
            for failure in &t.failures {
                eprintln!("note: cell shown as NA: {failure}");
            }
            render(&t, f)
        }
        Command::Analyze(a) => {
            let series = commands::load_trace(&a.trace)?;
            render(&commands::analyze(a, &series)?, f)
        }
        Command::Band(a) => render(&commands::band(a)?, f),
        Command::Simulate(a) => render(&commands::simulate(a)?, f),
    };
    Ok(out)
}

/// Run one command and write its output to `--out` or stdout.
pub fn run(cli: &Cli) -> Result<(), CommandError> {
    let out = execute(cli)?;
    match &cli.out {
        Some(path) => {
            fs::write(path, out).map_err(|e| CommandError::Io(format!("cannot write {}", path.display()), e))
        }
        None => io::stdout()
            .write_all(out.as_bytes())
            .map_err(|e| CommandError::Io("cannot write to stdout".into(), e)),
    }
}
