//! Flat `key = value` run configuration.
//!
//! Blank lines and lines starting with `#` are ignored. Unknown and repeated
//! keys are errors. Command-line flags override file values.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use hweno_core::io::fmt_f64;
use hweno_core::{LimiterMode, Scheme, SchemeConfig, TimeStepRule};

use crate::error::{CliError, Result};

pub const KEYS: [&str; 16] = [
    "problem",
    "scheme",
    "nx",
    "ny",
    "cfl",
    "gamma0",
    "gamma1",
    "gamma2",
    "d0",
    "d1",
    "d2",
    "epsilon",
    "limiter_mode",
    "time_step",
    "out_dir",
    "emit_fields",
];

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub problem: Option<String>,
    pub nx: Option<usize>,
    pub ny: Option<usize>,
    pub scheme: SchemeConfig,
    pub out_dir: PathBuf,
    pub emit_fields: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            problem: None,
            nx: None,
            ny: None,
            scheme: SchemeConfig::default(),
            out_dir: PathBuf::from("out"),
            emit_fields: true,
        }
    }
}

fn parse<T: std::str::FromStr>(key: &str, value: &str) -> Result<T>
where
    T::Err: std::fmt::Display,
{
    value.parse::<T>().map_err(|e| CliError::BadValue {
        key: key.to_string(),
        msg: e.to_string(),
    })
}

impl RunConfig {
    /// Applies one `key = value` pair.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let v = value.trim();
        let s = &mut self.scheme;
        match key {
            "problem" => self.problem = Some(v.to_string()),
            "scheme" => s.scheme = parse::<Scheme>(key, v)?,
            "nx" => self.nx = Some(parse(key, v)?),
            "ny" => self.ny = Some(parse(key, v)?),
            "cfl" => s.cfl = parse(key, v)?,
            "gamma0" => s.gamma_weights[0] = parse(key, v)?,
            "gamma1" => s.gamma_weights[1] = parse(key, v)?,
            "gamma2" => s.gamma_weights[2] = parse(key, v)?,
            "d0" => s.d_weights[0] = parse(key, v)?,
            "d1" => s.d_weights[1] = parse(key, v)?,
            "d2" => s.d_weights[2] = parse(key, v)?,
            "epsilon" => s.epsilon = parse(key, v)?,
            "limiter_mode" => s.limiter_mode = parse::<LimiterMode>(key, v)?,
            "time_step" => s.time_step = parse::<TimeStepRule>(key, v)?,
            "out_dir" => self.out_dir = PathBuf::from(v),
            "emit_fields" => self.emit_fields = parse(key, v)?,
            _ => {
                return Err(CliError::BadValue {
                    key: key.to_string(),
                    msg: format!("unknown key; valid keys: {}", KEYS.join(", ")),
                })
            }
        }
        Ok(())
    }

    pub fn from_text(text: &str, origin: &str) -> Result<Self> {
        let mut cfg = Self::default();
        let mut seen = BTreeMap::new();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |msg: String| CliError::ConfigFile {
                path: origin.to_string(),
                line: n + 1,
                msg,
            };
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| err(format!("expected `key = value`, found `{line}`")))?;
            let key = key.trim();
            if let Some(prev) = seen.insert(key.to_string(), n + 1) {
                return Err(err(format!("`{key}` already set on line {prev}")));
            }
            cfg.set(key, value).map_err(|e| err(e.to_string()))?;
        }
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_text(&text, &path.display().to_string())
    }

    /// Serializes every key that is set, in [`KEYS`] order.
    pub fn to_text(&self) -> String {
        let s = &self.scheme;
        let mut out = String::new();
        if let Some(p) = &self.problem {
            let _ = writeln!(out, "problem = {p}");
        }
        let _ = writeln!(out, "scheme = {}", s.scheme.as_str());
        if let Some(nx) = self.nx {
            let _ = writeln!(out, "nx = {nx}");
        }
        if let Some(ny) = self.ny {
            let _ = writeln!(out, "ny = {ny}");
        }
        let _ = writeln!(out, "cfl = {}", fmt_f64(s.cfl));
        for (k, g) in s.gamma_weights.iter().enumerate() {
            let _ = writeln!(out, "gamma{k} = {}", fmt_f64(*g));
        }
        for (k, d) in s.d_weights.iter().enumerate() {
            let _ = writeln!(out, "d{k} = {}", fmt_f64(*d));
        }
        let _ = writeln!(out, "epsilon = {}", fmt_f64(s.epsilon));
        let _ = writeln!(out, "limiter_mode = {}", s.limiter_mode.as_str());
        let _ = writeln!(out, "time_step = {}", s.time_step.as_str());
        let _ = writeln!(out, "out_dir = {}", self.out_dir.display());
        let _ = writeln!(out, "emit_fields = {}", self.emit_fields);
        out
    }

    pub fn problem(&self) -> Result<&str> {
        self.problem.as_deref().ok_or(CliError::MissingProblem)
    }

    pub fn validate(&self) -> Result<()> {
        self.scheme.validate()?;
        for (key, n) in [("nx", self.nx), ("ny", self.ny)] {
            if n == Some(0) {
                return Err(CliError::BadValue {
                    key: key.into(),
                    msg: "must be positive".into(),
                });
            }
        }
        Ok(())
    }
}
