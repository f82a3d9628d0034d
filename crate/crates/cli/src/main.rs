//! `unruh`: scenario runner and parameter sweeps printing CSV or JSON lines.

mod args;
mod commands;
mod parse;
mod table;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use crate::args::{Cli, Command};

#[derive(Debug)]
pub enum CliError {
    /// Invalid flags or inputs; exit code 2.
    Usage(String),
    /// A computation failed; exit code 3.
    Numerical(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "invalid input: {m}"),
            CliError::Numerical(m) => write!(f, "numerical failure: {m}"),
        }
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Numerical(_) => 3,
        }
    }
}

fn output_path(cli: &Cli) -> Option<PathBuf> {
    let path = cli.output.as_ref()?;
    match &cli.output_dir {
        Some(dir) if path.is_relative() => Some(dir.join(path)),
        _ => Some(path.clone()),
    }
}

fn run(cli: &Cli) -> Result<(), CliError> {
    let table = match &cli.command {
        Command::Correlations(a) => commands::correlations(a),
        Command::Single(a) => commands::single(a),
        Command::Rate(a) => commands::rate(a),
        Command::Two(a) => commands::two(a),
        Command::Sweep(a) => commands::sweep(a),
    }?;
    let io_error = |e: io::Error| CliError::Usage(format!("cannot write output: {e}"));
    match output_path(cli) {
        Some(path) => {
            if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
                std::fs::create_dir_all(parent).map_err(io_error)?;
            }
            let mut out = BufWriter::new(File::create(&path).map_err(io_error)?);
            table.write(&mut out, cli.format).map_err(io_error)?;
            out.flush().map_err(io_error)
        }
        None => {
            let mut out = io::stdout().lock();
            table.write(&mut out, cli.format).map_err(io_error)?;
            out.flush().map_err(io_error)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
