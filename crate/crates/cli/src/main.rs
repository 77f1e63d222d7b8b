mod commands;
mod config;
mod table;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use clap::Parser;

use config::{Cli, Command};
use table::Table;

enum Failure {
    /// Malformed request detected before any computation.
    Usage(String),
    /// Numeric-domain or resource error from the library.
    Numeric(zpe_core::Error),
    Io(io::Error),
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Numeric(_) | Failure::Io(_) => 3,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Usage(msg) => msg.clone(),
            Failure::Numeric(e) => e.to_string(),
            Failure::Io(e) => format!("i/o error: {e}"),
        }
    }
}

impl From<zpe_core::Error> for Failure {
    fn from(e: zpe_core::Error) -> Self {
        Failure::Numeric(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

fn run(cli: &Cli) -> Result<u8, Failure> {
    let args = cli.command.args();
    args.validate().map_err(Failure::Usage)?;

    let (table, status): (Table, u8) = match &cli.command {
        Command::Spectrum(a) => (commands::spectrum_table(a)?, 0),
        Command::Variance(a) => (commands::variance_table(a)?, 0),
        Command::Discrete(a) => (commands::discrete_table(a)?, 0),
        Command::Moments(a) => (commands::moments_table(a)?, 0),
        Command::Statistical(a) => (commands::statistical_table(a)?, 0),
        Command::Wigner(a) => (commands::wigner_table(a)?, 0),
        Command::Historical(a) => (commands::historical_table(a)?, 0),
        Command::Mc(a) => (commands::mc_table(a)?, 0),
        Command::Verify(a) => {
            let (table, all_pass) = commands::verify_table(a)?;
            (table, if all_pass { 0 } else { 1 })
        }
    };

    match &args.out {
        Some(path) => {
            let file = File::create(path)?;
            let mut writer = BufWriter::new(file);
            table::emit_report(&mut writer, cli.command.name(), args, &table, args.format)?;
            writer.flush()?;
        }
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            table::emit_report(&mut lock, cli.command.name(), args, &table, args.format)?;
            lock.flush()?;
        }
    }
    Ok(status)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(failure) => {
            eprintln!("error: {}", failure.message());
            ExitCode::from(failure.exit_code())
        }
    }
}
