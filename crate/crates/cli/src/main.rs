//! `tra`: spectra, phase shifts and wavefunctions from tridiagonal representations.

mod commands;
mod error;
mod manifest;
mod settings;
mod table;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use commands::{Format, Report, Units};
use error::CliError;
use manifest::RunManifest;
use settings::Resolver;
use table::Precision;

#[derive(Debug, Parser)]
#[command(
    name = "tra",
    version,
    about = "Tridiagonal representation solver for solvable Schrödinger problems"
)]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct GlobalArgs {
    /// Output format.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Energy units of the output [default: dimensionless, physical for coulomb and morse].
    #[arg(long, global = true, value_enum)]
    units: Option<Units>,
    /// Decimals printed for floating-point values.
    #[arg(long, global = true)]
    digits: Option<usize>,
    /// Print the shortest text that round-trips each f64.
    #[arg(long, global = true)]
    full_precision: bool,
    /// key = value file; flags override it.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Write the output here instead of stdout, with `<out>.manifest.json` beside it.
    #[arg(long, short, global = true)]
    out: Option<PathBuf>,
    /// Manifest path (defaults to `<out>.manifest.json` when --out is given).
    #[arg(long, global = true)]
    manifest: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Lowest 10 levels of the sinusoidal-bottom well for several γ.
    Table2(commands::Table2Args),
    /// Lowest 10 levels of the trigonometric Scarf well for several basis sizes.
    Table3(commands::Table3Args),
    /// Spectrum of the sinusoidal-bottom well.
    Well(commands::WellCmd),
    /// Spectrum of the trigonometric Scarf well.
    Scarf(commands::ScarfCmd),
    /// Coulomb scattering phase shifts.
    Coulomb(commands::CoulombCmd),
    /// Morse bound spectrum and scattering phase shifts.
    Morse(commands::MorseCmd),
    /// Sampled bound-state wavefunctions.
    Wavefunction(commands::WavefunctionCmd),
    /// Levels over a range of one potential parameter, in long format.
    Sweep(commands::SweepCmd),
    /// Compare the lowest levels with a finite-difference solver.
    OracleCheck(commands::OracleCmd),
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Table2(_) => "table2",
            Command::Table3(_) => "table3",
            Command::Well(_) => "well",
            Command::Scarf(_) => "scarf",
            Command::Coulomb(_) => "coulomb",
            Command::Morse(_) => "morse",
            Command::Wavefunction(_) => "wavefunction",
            Command::Sweep(_) => "sweep",
            Command::OracleCheck(_) => "oracle-check",
        }
    }

    fn default_units(&self) -> Units {
        match self {
            Command::Coulomb(_) | Command::Morse(_) => Units::Physical,
            _ => Units::Dimensionless,
        }
    }

    fn run(&self, r: &mut Resolver, units: Units) -> Result<Report, CliError> {
        match self {
            Command::Table2(a) => commands::table2(a, r, units),
            Command::Table3(a) => commands::table3(a, r, units),
            Command::Well(a) => commands::well(a, r, units),
            Command::Scarf(a) => commands::scarf(a, r, units),
            Command::Coulomb(a) => commands::coulomb(a, r, units),
            Command::Morse(a) => commands::morse(a, r, units),
            Command::Wavefunction(a) => commands::wavefunction(a, r, units),
            Command::Sweep(a) => commands::sweep(a, r, units),
            Command::OracleCheck(a) => commands::oracle_check(a, r, units),
        }
    }
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    fs::write(path, bytes).map_err(|e| CliError::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display()))))
}

fn run(cli: &Cli) -> Result<Option<CliError>, CliError> {
    let g = &cli.global;
    let mut r = Resolver::from_file(g.config.as_deref())?;
    let format = r.value("format", g.format, Format::Csv)?;
    let units = r.value("units", g.units, cli.command.default_units())?;
    let digits = r.value("digits", g.digits, 9)?;
    let full = r.switch("full-precision", g.full_precision)?;
    let precision = if full {
        Precision::Full
    } else {
        Precision::Decimals(digits)
    };

    let report = cli.command.run(&mut r, units)?;
    let parameters = r.finish()?;

    let mut bytes = match format {
        Format::Csv => report.table.to_csv(precision)?,
        Format::Json => serde_json::to_vec_pretty(&report.table.to_json(precision))?,
    };
    if format == Format::Json {
        bytes.push(b'\n');
    }
    let manifest_path = g.manifest.clone().or_else(|| {
        g.out
            .as_ref()
            .map(|o| PathBuf::from(format!("{}.manifest.json", o.display())))
    });
    match &g.out {
        Some(path) => write_file(path, &bytes)?,
        None => std::io::stdout().lock().write_all(&bytes)?,
    }
    if let Some(path) = manifest_path {
        let m = RunManifest::new(cli.command.name(), parameters, report.basis_size)?;
        let mut text = serde_json::to_vec_pretty(&m)?;
        text.push(b'\n');
        write_file(&path, &text)?;
    }
    Ok(report.failure)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let failure = match run(&cli) {
        Ok(None) => return ExitCode::SUCCESS,
        Ok(Some(e)) | Err(e) => e,
    };
    eprintln!("tra: {failure}");
    ExitCode::from(failure.exit_code() as u8)
}
