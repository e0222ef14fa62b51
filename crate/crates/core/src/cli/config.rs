//! Grids, config files and flag merging.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

/// Parameters that may be swept with `start:stop:step`.
pub const SWEEPABLE: [&str; 5] = ["omega", "r", "delta", "deta", "n_max"];

const KNOWN_KEYS: [&str; 10] = [
    "omega",
    "r",
    "delta",
    "deta",
    "n_max",
    "steps",
    "m",
    "format",
    "out",
    "eta_total",
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn usage(msg: impl Into<String>) -> UsageError {
    UsageError(msg.into())
}

/// A single value or an inclusive `start:stop:step` range.
#[derive(Debug, Clone, PartialEq)]
pub enum Grid {
    Fixed(f64),
    Range { start: f64, stop: f64, step: f64 },
}

impl Grid {
    pub fn parse(name: &str, text: &str) -> Result<Self, UsageError> {
        let num = |s: &str| {
            s.trim()
                .parse::<f64>()
                .ok()
                .filter(|x| x.is_finite())
                .ok_or_else(|| usage(format!("--{name}: '{s}' is not a finite number")))
        };
        let parts: Vec<&str> = text.split(':').collect();
        match parts.as_slice() {
            [v] => Ok(Grid::Fixed(num(v)?)),
            [a, b, c] => {
                let (start, stop, step) = (num(a)?, num(b)?, num(c)?);
                if !(step > 0.0) {
                    return Err(usage(format!("--{name}: step must be > 0")));
                }
                if start > stop {
                    return Err(usage(format!("--{name}: start must be <= stop")));
                }
                if (stop - start) / step > 1e6 {
                    return Err(usage(format!("--{name}: more than a million grid points")));
                }
                Ok(Grid::Range { start, stop, step })
            }
            _ => Err(usage(format!(
                "--{name}: expected a number or start:stop:step, got '{text}'"
            ))),
        }
    }

    pub fn is_sweep(&self) -> bool {
        matches!(self, Grid::Range { .. })
    }

    /// Points `start + i * step` up to `stop`, endpoint included when it lies
    /// on the grid up to rounding.
    pub fn points(&self) -> Vec<f64> {
        match *self {
            Grid::Fixed(x) => vec![x],
            Grid::Range { start, stop, step } => {
                let n = ((stop - start) / step + 1e-9).floor() as usize;
                (0..=n).map(|i| start + i as f64 * step).collect()
            }
        }
    }
}

/// `key = value` lines; `#` starts a comment. Dashes in keys are read as underscores.
pub fn parse_config(text: &str) -> Result<BTreeMap<String, String>, UsageError> {
    let mut map = BTreeMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| usage(format!("config line {}: expected key = value", lineno + 1)))?;
        let key = k.trim().replace('-', "_");
        if !KNOWN_KEYS.contains(&key.as_str()) {
            return Err(usage(format!("config line {}: unknown key '{key}'", lineno + 1)));
        }
        map.insert(key, v.trim().to_string());
    }
    Ok(map)
}

pub fn read_config(path: &Path) -> Result<BTreeMap<String, String>, UsageError> {
    let text = std::fs::read_to_string(path).map_err(|e| usage(format!("--config {}: {e}", path.display())))?;
    parse_config(&text)
}

/// Flag values layered over a config file; flags win.
#[derive(Debug, Clone, Default)]
pub struct Settings {
    flags: BTreeMap<String, String>,
    file: BTreeMap<String, String>,
}

impl Settings {
    pub fn new(flags: BTreeMap<String, String>, file: BTreeMap<String, String>) -> Self {
        Self { flags, file }
    }

    pub fn raw(&self, key: &str) -> Option<&str> {
        self.flags.get(key).or_else(|| self.file.get(key)).map(String::as_str)
    }

    pub fn grid(&self, key: &str, default: &str) -> Result<Grid, UsageError> {
        Grid::parse(key, self.raw(key).unwrap_or(default))
    }

    pub fn number(&self, key: &str, default: f64) -> Result<f64, UsageError> {
        match self.raw(key) {
            None => Ok(default),
            Some(s) => match Grid::parse(key, s)? {
                Grid::Fixed(x) => Ok(x),
                Grid::Range { .. } => Err(usage(format!("--{key} cannot be swept here"))),
            },
        }
    }

    pub fn count(&self, key: &str, default: usize) -> Result<usize, UsageError> {
        match self.raw(key) {
            None => Ok(default),
            Some(s) => s
                .trim()
                .parse()
                .map_err(|_| usage(format!("--{key}: '{s}' is not a non-negative integer"))),
        }
    }
}

/// At most one swept grid.
pub fn check_single_sweep(grids: &[(&str, &Grid)]) -> Result<(), UsageError> {
    let swept: Vec<&str> = grids.iter().filter(|(_, g)| g.is_sweep()).map(|(n, _)| *n).collect();
    if swept.len() > 1 {
        return Err(usage(format!(
            "only one parameter may be swept, got {}",
            swept.join(" and ")
        )));
    }
    Ok(())
}
