//! Plain `key = value` run configuration.
//!
//! A config file holds one assignment per line with `#` comments; values on
//! the command line (bare `key=value` arguments) override file entries.

use crate::error::{Error, Result};
use crate::rates::CouplingKind;
use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::path::Path;
use std::str::FromStr;

/// Parameter names the CLI understands.
pub const KNOWN_KEYS: [&str; 14] = [
    "coupling",
    "T",
    "temperature",
    "omega0",
    "lambda",
    "u",
    "theta",
    "phi",
    "tau",
    "cutoff_eps",
    "include_lamb",
    "preset",
    "quantity",
    "axis",
];

#[derive(Clone, Debug, Default)]
pub struct RunConfig {
    map: BTreeMap<String, String>,
}

impl RunConfig {
    pub fn new() -> Self {
        Self::default()
    }

    /// Load `key = value` lines from a file.
    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        let mut config = Self::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(Error::Config(format!(
                    "{}:{}: expected 'key = value', got '{raw}'",
                    path.display(),
                    lineno + 1
                )));
            };
            config.set(key.trim(), value.trim())?;
        }
        Ok(config)
    }

    /// Apply command-line `key=value` overrides on top.
    pub fn apply_overrides(&mut self, overrides: &[String]) -> Result<()> {
        for item in overrides {
            let Some((key, value)) = item.split_once('=') else {
                return Err(Error::Config(format!(
                    "expected key=value argument, got '{item}'"
                )));
            };
            self.set(key.trim(), value.trim())?;
        }
        Ok(())
    }

    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let canonical = if key == "temperature" { "T" } else { key };
        let known = KNOWN_KEYS.contains(&canonical) || canonical == "axis2" || canonical == "basis";
        if !known {
            return Err(Error::Config(format!(
                "unknown key '{key}' (known: {})",
                KNOWN_KEYS.join(", ")
            )));
        }
        self.map.insert(canonical.to_string(), value.to_string());
        Ok(())
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.map.get(key).map(|s| s.as_str())
    }

    /// Key-value view for metadata emission.
    pub fn entries(&self) -> impl Iterator<Item = (&str, &str)> {
        self.map.iter().map(|(k, v)| (k.as_str(), v.as_str()))
    }

    pub fn coupling(&self) -> Result<CouplingKind> {
        match self.get("coupling") {
            Some(s) => CouplingKind::from_str(s),
            None => Ok(CouplingKind::Udw),
        }
    }

    pub fn f64_or(&self, key: &str, default: f64) -> Result<f64> {
        match self.get(key) {
            Some(s) => parse_number(s).ok_or_else(|| {
                Error::Config(format!("key '{key}': cannot parse '{s}' as a number"))
            }),
            None => Ok(default),
        }
    }

    pub fn bool_or(&self, key: &str, default: bool) -> Result<bool> {
        match self.get(key) {
            Some("true") | Some("1") | Some("yes") => Ok(true),
            Some("false") | Some("0") | Some("no") => Ok(false),
            Some(other) => Err(Error::Config(format!(
                "key '{key}': cannot parse '{other}' as a boolean"
            ))),
            None => Ok(default),
        }
    }

    /// Comma-separated list of numbers; a scalar parses as a 1-element list.
    pub fn f64_list_or(&self, key: &str, default: f64) -> Result<Vec<f64>> {
        match self.get(key) {
            None => Ok(vec![default]),
            Some(s) => s
                .split(',')
                .map(|item| {
                    parse_number(item.trim()).ok_or_else(|| {
                        Error::Config(format!("key '{key}': cannot parse '{item}' as a number"))
                    })
                })
                .collect(),
        }
    }
}

/// Parse a finite decimal, with `pi` and simple multiples accepted for the
/// angle parameters (`pi`, `pi/2`, `2pi`, ...).
pub fn parse_number(s: &str) -> Option<f64> {
    let t = s.trim();
    if let Ok(v) = t.parse::<f64>() {
        return v.is_finite().then_some(v);
    }
    let lower = t.to_ascii_lowercase();
    if lower == "pi" {
        return Some(PI);
    }
    if let Some(rest) = lower.strip_prefix("pi/") {
        return rest
            .parse::<f64>()
            .ok()
            .filter(|d| *d != 0.0)
            .map(|d| PI / d);
    }
    if let Some(front) = lower.strip_suffix("pi") {
        return front.parse::<f64>().ok().map(|m| m * PI);
    }
    None
}
