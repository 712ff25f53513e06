//! Run configuration: defaults, `key=value` config files and overrides.
//!
//! Values are resolved in three layers: built-in defaults, then a config
//! file (given explicitly or through the `GLG_CONFIG` environment
//! variable), then command-line flags.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde_json::{json, Value};
use thiserror::Error;

use crate::scalar::Field;

/// Environment variable naming a fallback config file.
pub const CONFIG_ENV: &str = "GLG_CONFIG";

/// Report serialization format.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

impl Format {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "json" => Some(Format::Json),
            "csv" => Some(Format::Csv),
            _ => None,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Csv => "csv",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error("unknown config key {0:?}")]
    UnknownKey(String),
    #[error("invalid value {value:?} for {key}")]
    InvalidValue { key: String, value: String },
    #[error("malformed config line {line}: {text:?}")]
    Malformed { line: usize, text: String },
    #[error("cannot read config file {path}: {message}")]
    Io { path: String, message: String },
}

/// Settings shared by every command.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    /// Jet truncation order `N`.
    pub order: usize,
    /// Map-semigroup truncation degree `D`.
    pub degree: usize,
    pub trials: u64,
    pub seed: u64,
    pub tol: f64,
    pub grid: usize,
    pub vmax: f64,
    pub field: Field,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub hbar: f64,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            order: 8,
            degree: 3,
            trials: 100,
            seed: 42,
            tol: 1e-10,
            grid: 512,
            vmax: 20.0,
            field: Field::Exact,
            format: Format::Json,
            out: None,
            hbar: 1.0,
        }
    }
}

fn parse_value<T: std::str::FromStr>(key: &str, value: &str) -> Result<T, ConfigError> {
    value.parse().map_err(|_| ConfigError::InvalidValue { key: key.into(), value: value.into() })
}

impl RunConfig {
    /// Sets one setting by its flag name (without dashes).
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), ConfigError> {
        let bad = || ConfigError::InvalidValue { key: key.into(), value: value.into() };
        match key {
            "order" => self.order = parse_value(key, value)?,
            "degree" => self.degree = parse_value(key, value)?,
            "trials" => self.trials = parse_value(key, value)?,
            "seed" => self.seed = parse_value(key, value)?,
            "tol" => self.tol = parse_value(key, value)?,
            "grid" => self.grid = parse_value(key, value)?,
            "vmax" => self.vmax = parse_value(key, value)?,
            "hbar" => self.hbar = parse_value(key, value)?,
            "field" => self.field = Field::parse(value).ok_or_else(bad)?,
            "format" => self.format = Format::parse(value).ok_or_else(bad)?,
            "out" => self.out = Some(PathBuf::from(value)),
            other => return Err(ConfigError::UnknownKey(other.into())),
        }
        Ok(())
    }

    /// Applies `key=value` lines; blank lines and `#` comments are skipped.
    pub fn apply_text(&mut self, text: &str) -> Result<(), ConfigError> {
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| ConfigError::Malformed { line: i + 1, text: raw.into() })?;
            self.set(k.trim(), v.trim())?;
        }
        Ok(())
    }

    pub fn apply_file(&mut self, path: &Path) -> Result<(), ConfigError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| ConfigError::Io { path: path.display().to_string(), message: e.to_string() })?;
        self.apply_text(&text)
    }

    /// Checks ranges that the suites rely on.
    pub fn validate(&self) -> Result<(), ConfigError> {
        let bad = |key: &str, value: String| Err(ConfigError::InvalidValue { key: key.into(), value });
        if self.order < 2 {
            return bad("order", self.order.to_string());
        }
        if self.degree < 1 {
            return bad("degree", self.degree.to_string());
        }
        if !(self.tol > 0.0) {
            return bad("tol", self.tol.to_string());
        }
        if self.grid < 64 {
            return bad("grid", self.grid.to_string());
        }
        if !(self.vmax > 0.0) {
            return bad("vmax", self.vmax.to_string());
        }
        if !(self.hbar > 0.0) {
            return bad("hbar", self.hbar.to_string());
        }
        Ok(())
    }

    /// Run metadata recorded in reports (no timestamps).
    pub fn metadata(&self) -> BTreeMap<String, Value> {
        let mut m = BTreeMap::new();
        m.insert("order".into(), json!(self.order));
        m.insert("degree".into(), json!(self.degree));
        m.insert("trials".into(), json!(self.trials));
        m.insert("seed".into(), json!(self.seed));
        m.insert("tol".into(), json!(self.tol));
        m.insert("grid".into(), json!(self.grid));
        m.insert("vmax".into(), json!(self.vmax));
        m.insert("hbar".into(), json!(self.hbar));
        m.insert("field".into(), json!(self.field.as_str()));
        m.insert("version".into(), json!(env!("CARGO_PKG_VERSION")));
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn file_lines_and_overrides() {
        let mut c = RunConfig::default();
        c.apply_text("# comment\norder = 6\nfield=float\n\nout=r.json\n").unwrap();
        assert_eq!(c.order, 6);
        assert_eq!(c.field, Field::Float);
        assert_eq!(c.out, Some(PathBuf::from("r.json")));
        c.set("order", "5").unwrap();
        assert_eq!(c.order, 5);
        assert!(matches!(c.apply_text("nonsense"), Err(ConfigError::Malformed { line: 1, .. })));
        assert!(matches!(c.set("colour", "red"), Err(ConfigError::UnknownKey(_))));
        assert!(c.set("trials", "-1").is_err());
        assert!(RunConfig::default().validate().is_ok());
    }
}
