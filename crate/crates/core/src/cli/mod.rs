//! Command-line front end: parameter sweeps and the scalar/fermion comparison
//! table, written as CSV, JSON lines or (table only) plain text.
//!
//! Exit codes: 0 success, 1 usage error, 2 computation error (any error row).

pub mod commands;
pub mod config;
pub mod record;

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand};

use config::{Settings, UsageError};
use record::RecordSet;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_COMPUTATION: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "unruh",
    version,
    about = "Fermion and scalar entanglement under uniform acceleration"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Region-I occupation of the fermion vacuum vs omega.
    Occupation(Flags),
    /// Spin-pair negativity and mutual information vs deta.
    Entanglement(Flags),
    /// Scalar vs fermion comparison table.
    #[command(name = "table1", visible_alias = "compare")]
    Compare(Flags),
    /// Wigner matrix, little-group oracle and accumulated products.
    Wigner(Flags),
}

/// Shared flags; each subcommand rejects the ones it does not read.
#[derive(Debug, Clone, Default, clap::Args)]
pub struct Flags {
    #[arg(long, allow_hyphen_values = true)]
    pub omega: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub r: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub delta: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub deta: Option<String>,
    #[arg(long = "n-max")]
    pub n_max: Option<String>,
    #[arg(long)]
    pub steps: Option<String>,
    /// Particle mass.
    #[arg(long, allow_hyphen_values = true)]
    pub m: Option<String>,
    /// Total rapidity for the accumulated product (defaults to deta).
    #[arg(long = "eta-total", allow_hyphen_values = true)]
    pub eta_total: Option<String>,
    /// csv | jsonl (sweeps), text | csv | jsonl (table1).
    #[arg(long)]
    pub format: Option<String>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// File of `key = value` lines; flags win on conflict.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

impl Flags {
    fn map(&self) -> BTreeMap<String, String> {
        let pairs = [
            ("omega", &self.omega),
            ("r", &self.r),
            ("delta", &self.delta),
            ("deta", &self.deta),
            ("n_max", &self.n_max),
            ("steps", &self.steps),
            ("m", &self.m),
            ("eta_total", &self.eta_total),
            ("format", &self.format),
        ];
        let mut map: BTreeMap<String, String> = pairs
            .iter()
            .filter_map(|(k, v)| v.as_ref().map(|v| (k.to_string(), v.clone())))
            .collect();
        if let Some(out) = &self.out {
            map.insert("out".into(), out.to_string_lossy().into_owned());
        }
        map
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    JsonLines,
    Text,
}

impl Format {
    fn parse(s: &str) -> Result<Self, UsageError> {
        match s {
            "csv" => Ok(Format::Csv),
            "jsonl" | "json-lines" | "json" => Ok(Format::JsonLines),
            "text" => Ok(Format::Text),
            other => Err(UsageError(format!("--format: unknown format '{other}'"))),
        }
    }
}

fn accepted(command: &Command) -> (&'static [&'static str], &Flags) {
    match command {
        Command::Occupation(f) => (&["omega"], f),
        Command::Entanglement(f) => (&["m", "delta", "deta"], f),
        Command::Compare(f) => (&["n_max", "r", "deta", "delta", "m"], f),
        Command::Wigner(f) => (&["m", "delta", "deta", "steps", "eta_total"], f),
    }
}

fn settings(command: &Command) -> Result<(Settings, Format, Option<PathBuf>), UsageError> {
    let (keys, flags) = accepted(command);
    let flag_map = flags.map();
    for k in flag_map.keys() {
        if k != "format" && k != "out" && !keys.contains(&k.as_str()) {
            return Err(UsageError(format!(
                "--{} is not used by this subcommand",
                k.replace('_', "-")
            )));
        }
    }
    let file = match &flags.config {
        Some(path) => config::read_config(path)?,
        None => BTreeMap::new(),
    };
    let s = Settings::new(flag_map, file);
    let default_format = if matches!(command, Command::Compare(_)) {
        "text"
    } else {
        "csv"
    };
    let format = Format::parse(s.raw("format").unwrap_or(default_format))?;
    if format == Format::Text && !matches!(command, Command::Compare(_)) {
        return Err(UsageError("--format text is only available for table1".into()));
    }
    let out = s.raw("out").filter(|p| !p.is_empty() && *p != "-").map(PathBuf::from);
    Ok((s, format, out))
}

enum Output {
    Records(RecordSet),
    Table(commands::Comparison),
}

fn execute(command: &Command, s: &Settings) -> Result<Output, UsageError> {
    Ok(match command {
        Command::Occupation(_) => Output::Records(commands::occupation(s)?),
        Command::Entanglement(_) => Output::Records(commands::entanglement_sweep(s)?),
        Command::Wigner(_) => Output::Records(commands::wigner(s)?),
        Command::Compare(_) => Output::Table(commands::comparison(s)?),
    })
}

fn emit(output: &Output, format: Format, out: &mut dyn Write) -> io::Result<usize> {
    let records = match output {
        Output::Records(r) => r,
        Output::Table(t) => &t.records,
    };
    match (format, output) {
        (Format::Text, Output::Table(t)) => out.write_all(t.text.as_bytes())?,
        (Format::JsonLines, _) => records.write_jsonl(&mut *out)?,
        _ => records.write_csv(&mut *out)?,
    }
    out.flush()?;
    Ok(records.error_count())
}

/// Parses `args` (program name first) and runs the command, writing results to
/// `stdout` unless `--out` is given. Diagnostics go to standard error.
pub fn run<I, T>(args: I, stdout: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let (s, format, out_path) = match settings(&cli.command) {
        Ok(x) => x,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    let output = match execute(&cli.command, &s) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    let written = match &out_path {
        Some(path) => File::create(path).and_then(|f| emit(&output, format, &mut BufWriter::new(f))),
        None => emit(&output, format, stdout),
    };
    match written {
        Ok(0) => EXIT_OK,
        Ok(n) => {
            eprintln!("error: {n} grid point(s) failed; see the error column");
            EXIT_COMPUTATION
        }
        Err(e) => {
            eprintln!("error: writing output: {e}");
            EXIT_COMPUTATION
        }
    }
}
