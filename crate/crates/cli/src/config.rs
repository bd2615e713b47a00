//! Layered settings: flag (or `LZ_*` variable) > config file > default.

use std::collections::BTreeMap;
use std::fmt::Display;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::error::CliError;

/// Keys accepted in a config file; identical to the long flag names.
pub const KNOWN_KEYS: &[&str] = &[
    "v",
    "delta",
    "hbar",
    "t-max",
    "dt",
    "form",
    "mode",
    "tails",
    "engine",
    "evaluation",
    "output",
    "sample-every",
    "dts",
    "t-maxs",
    "methods",
    "workers",
    "format",
    "no-timing",
    "t-far",
    "t-near",
    "n-factors",
    "chunk-size",
];

#[derive(Debug, Default)]
pub struct Settings {
    values: BTreeMap<String, String>,
    pub path: Option<PathBuf>,
}

fn normalize(key: &str) -> String {
    key.trim().to_ascii_lowercase().replace('_', "-")
}

impl Settings {
    /// Parses a flat `key = value` file. `#` starts a comment; blank lines are skipped.
    pub fn parse(text: &str, origin: &str) -> Result<Self, CliError> {
        let mut values = BTreeMap::new();
        for (no, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((k, v)) = line.split_once('=') else {
                return Err(CliError::Validation(format!(
                    "{origin}:{}: expected `key = value`, found `{line}`",
                    no + 1
                )));
            };
            let key = normalize(k);
            if !KNOWN_KEYS.contains(&key.as_str()) {
                return Err(CliError::Validation(format!("{origin}:{}: unknown key `{key}`", no + 1)));
            }
            let value = v.trim().trim_matches('"').to_string();
            values.insert(key, value);
        }
        Ok(Self { values, path: None })
    }

    pub fn load(path: Option<&Path>) -> Result<Self, CliError> {
        let Some(path) = path else {
            return Ok(Self::default());
        };
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Io(format!("cannot read config {}: {e}", path.display())))?;
        let mut s = Self::parse(&text, &path.display().to_string())?;
        s.path = Some(path.to_path_buf());
        Ok(s)
    }

    fn from_file<T>(&self, key: &'static str) -> Result<Option<T>, CliError>
    where
        T: FromStr,
        T::Err: Display,
    {
        self.values
            .get(key)
            .map(|raw| {
                raw.parse::<T>()
                    .map_err(|e| CliError::Validation(format!("invalid value for {key} in config: {e}")))
            })
            .transpose()
    }

    pub fn pick<T>(&self, flag: Option<T>, key: &'static str, default: T) -> Result<T, CliError>
    where
        T: FromStr,
        T::Err: Display,
    {
        Ok(self.pick_opt(flag, key)?.unwrap_or(default))
    }

    pub fn pick_opt<T>(&self, flag: Option<T>, key: &'static str) -> Result<Option<T>, CliError>
    where
        T: FromStr,
        T::Err: Display,
    {
        match flag {
            Some(v) => Ok(Some(v)),
            None => self.from_file(key),
        }
    }

    /// Parses a string-valued setting with `parse`, naming `key` on failure.
    pub fn pick_with<T, E: Display>(
        &self,
        flag: Option<String>,
        key: &'static str,
        default: &str,
        parse: impl Fn(&str) -> Result<T, E>,
    ) -> Result<T, CliError> {
        let raw = self.pick(flag, key, default.to_string())?;
        parse(&raw).map_err(|e| CliError::Validation(format!("invalid value for {key}: {e}")))
    }

    /// A presence flag: set on the command line, or `true` in the file.
    pub fn switch(&self, flag: bool, key: &'static str) -> Result<bool, CliError> {
        if flag {
            return Ok(true);
        }
        Ok(self.from_file::<bool>(key)?.unwrap_or(false))
    }
}

/// `a,b,c` or `logspace(a,b,n)`; the latter spans `a` to `b` in `n` log-uniform points.
pub fn parse_list(s: &str) -> Result<Vec<f64>, String> {
    let s = s.trim();
    if let Some(inner) = s.strip_prefix("logspace(").and_then(|r| r.strip_suffix(')')) {
        let parts: Vec<&str> = inner.split(',').map(str::trim).collect();
        let [a, b, n] = parts[..] else {
            return Err(format!("logspace needs three arguments, got `{inner}`"));
        };
        let a: f64 = a.parse().map_err(|e| format!("logspace start `{a}`: {e}"))?;
        let b: f64 = b.parse().map_err(|e| format!("logspace end `{b}`: {e}"))?;
        let n: usize = n.parse().map_err(|e| format!("logspace count `{n}`: {e}"))?;
        if !(a > 0.0 && b > 0.0) {
            return Err("logspace endpoints must be positive".into());
        }
        if n == 0 {
            return Err("logspace count must be at least 1".into());
        }
        if n == 1 {
            return Ok(vec![a]);
        }
        let (la, lb) = (a.log10(), b.log10());
        return Ok((0..n)
            .map(|i| 10f64.powf(la + (lb - la) * i as f64 / (n - 1) as f64))
            .collect());
    }
    s.split(',')
        .filter(|x| !x.trim().is_empty())
        .map(|x| x.trim().parse::<f64>().map_err(|e| format!("`{}`: {e}", x.trim())))
        .collect::<Result<Vec<_>, _>>()
        .and_then(|v| if v.is_empty() { Err("list is empty".into()) } else { Ok(v) })
}
