//! `key=value` config files and the flag > file > default merge.
//!
//! A config file is read line by line. Blank lines and `#` comments are
//! skipped, except `#!` lines which carry settings, as do bare `key=value`
//! lines. Reading stops at the first other line, so any output file of this
//! tool can be fed back as a config. A leading graymap magic line is skipped.

use std::collections::BTreeMap;
use std::fmt::Display;
use std::path::Path;
use std::str::FromStr;

use crate::{CliError, Result};

/// Key under which the subcommand name is recorded.
pub const COMMAND_KEY: &str = "command";

/// Settings read from a file, in file order.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ConfigFile {
    entries: Vec<(String, String)>,
}

impl ConfigFile {
    /// Parses config text.
    pub fn parse(text: &str) -> Result<Self> {
        let mut entries = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if i == 0 && line == "P5" {
                continue;
            }
            let body = if let Some(rest) = line.strip_prefix("#!") {
                rest.trim()
            } else if line.is_empty() || line.starts_with('#') {
                continue;
            } else if line.contains('=') {
                line
            } else {
                break;
            };
            let (k, v) =
                body.split_once('=').ok_or_else(|| CliError::Usage(format!("config line without '=': {line}")))?;
            entries.push((k.trim().to_string(), v.trim().to_string()));
        }
        Ok(ConfigFile { entries })
    }

    /// Reads and parses a file; binary tails are tolerated.
    pub fn load(path: &Path) -> Result<Self> {
        let bytes = std::fs::read(path)?;
        Self::parse(&String::from_utf8_lossy(&bytes))
    }

    /// Entries in file order.
    pub fn entries(&self) -> &[(String, String)] {
        &self.entries
    }
}

/// Effective settings of one run, with the echo of everything resolved.
#[derive(Debug)]
pub struct Settings {
    file: BTreeMap<String, String>,
    echo: Vec<(String, String)>,
}

impl Settings {
    /// Starts a merge for `command`. A `command` entry in the file must match.
    pub fn new(command: &str, file: Option<ConfigFile>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (k, v) in file.map(|f| f.entries).unwrap_or_default() {
            map.insert(k, v);
        }
        if let Some(c) = map.remove(COMMAND_KEY) {
            if c != command {
                return Err(CliError::Usage(format!("config is for '{c}', not '{command}'")));
            }
        }
        Ok(Settings { file: map, echo: vec![(COMMAND_KEY.to_string(), command.to_string())] })
    }

    fn take_file<T: FromStr>(&mut self, key: &str) -> Result<Option<T>>
    where
        T::Err: Display,
    {
        match self.file.remove(key) {
            None => Ok(None),
            Some(raw) => raw.parse().map(Some).map_err(|e| CliError::Usage(format!("config value {key}={raw}: {e}"))),
        }
    }

    /// Flag, else file, else `default`; the result is echoed.
    pub fn get<T: FromStr + Display>(&mut self, key: &str, flag: Option<T>, default: T) -> Result<T>
    where
        T::Err: Display,
    {
        let file = self.take_file(key)?;
        let v = flag.or(file).unwrap_or(default);
        self.echo.push((key.to_string(), v.to_string()));
        Ok(v)
    }

    /// Like [`Settings::get`] but without a default.
    pub fn require<T: FromStr + Display>(&mut self, key: &str, flag: Option<T>) -> Result<T>
    where
        T::Err: Display,
    {
        let file = self.take_file(key)?;
        let v = flag.or(file).ok_or_else(|| CliError::Usage(format!("missing --{key}")))?;
        self.echo.push((key.to_string(), v.to_string()));
        Ok(v)
    }

    /// Flag, else file; never echoed. Used for settings that cannot change output.
    pub fn silent<T: FromStr>(&mut self, key: &str, flag: Option<T>) -> Result<Option<T>>
    where
        T::Err: Display,
    {
        let file = self.take_file(key)?;
        Ok(flag.or(file))
    }

    /// Fails on file keys that no setting consumed.
    pub fn finish(&self) -> Result<()> {
        match self.file.keys().next() {
            Some(k) => Err(CliError::Usage(format!("unknown config key '{k}'"))),
            None => Ok(()),
        }
    }

    /// `#! key=value` lines, one per resolved setting.
    pub fn header(&self) -> String {
        self.echo.iter().map(|(k, v)| format!("#! {k}={v}\n")).collect()
    }
}
