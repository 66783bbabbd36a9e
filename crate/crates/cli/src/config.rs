//! Defaults for the command line, loaded from a flat `key = value` file.

use std::path::Path;
use std::str::FromStr;

use redundant_radix::numerals::Params;
use redundant_radix::{Error, Result};

/// Environment variable naming the config file.
pub const CONFIG_ENV: &str = "REDUNDANT_RADIX_CONFIG";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Dot,
    Text,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        match text {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "dot" => Ok(Format::Dot),
            "text" => Ok(Format::Text),
            _ => Err(Error::Usage(format!(
                "unknown format {text:?}, expected json, csv, dot or text"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliConfig {
    pub s: u32,
    pub r: u32,
    pub seed: u64,
    pub format: Format,
    /// Largest `--depth` accepted by `expand`.
    pub max_depth: usize,
    /// Largest sample exponent `n` for `graph` and `integral`.
    pub max_sample_exponent: u32,
    /// State limit for every remainder automaton.
    pub max_states: usize,
}

impl Default for CliConfig {
    fn default() -> Self {
        CliConfig {
            s: 2,
            r: 3,
            seed: 0,
            format: Format::Json,
            max_depth: 100_000,
            max_sample_exponent: 12,
            max_states: redundant_radix::repcensus::DEFAULT_MAX_STATES,
        }
    }
}

fn parse_field<T: FromStr>(key: &str, value: &str) -> Result<T> {
    value
        .parse()
        .map_err(|_| Error::Parse(format!("config key {key}: bad value {value:?}")))
}

fn positive<T: PartialEq + Default>(key: &str, value: T) -> Result<T> {
    if value == T::default() {
        return Err(Error::Usage(format!("config key {key} must be positive")));
    }
    Ok(value)
}

impl CliConfig {
    /// Parses `key = value` lines over the defaults. Blank lines and lines
    /// starting with `#` are skipped.
    pub fn parse(text: &str) -> Result<Self> {
        let mut config = CliConfig::default();
        for (no, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("config line {}: expected key = value", no + 1)))?;
            let (key, value) = (key.trim(), value.trim());
            match key {
                "s" => config.s = parse_field(key, value)?,
                "r" => config.r = parse_field(key, value)?,
                "seed" => config.seed = parse_field(key, value)?,
                "format" => config.format = value.parse()?,
                "max_depth" => config.max_depth = positive(key, parse_field(key, value)?)?,
                "max_sample_exponent" => {
                    config.max_sample_exponent = positive(key, parse_field(key, value)?)?
                }
                "max_states" => config.max_states = positive(key, parse_field(key, value)?)?,
                _ => return Err(Error::Usage(format!("unknown config key {key:?}"))),
            }
        }
        config.params()?;
        Ok(config)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Usage(format!("cannot read config {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn params(&self) -> Result<Params> {
        Params::new(self.s, self.r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults() {
        let c = CliConfig::default();
        assert_eq!((c.s, c.r, c.format), (2, 3, Format::Json));
        assert_eq!(CliConfig::parse("").unwrap(), c);
    }

    #[test]
    fn parses_keys() {
        let c = CliConfig::parse("# comment\ns = 3\nr=5\n\nseed = 42\nformat = text\nmax_states=10\n")
            .unwrap();
        assert_eq!((c.s, c.r, c.seed, c.format, c.max_states), (3, 5, 42, Format::Text, 10));
    }

    #[test]
    fn rejects_bad_files() {
        assert!(CliConfig::parse("s = 4\nr = 3").is_err());
        assert!(CliConfig::parse("max_depth = 0").is_err());
        assert!(CliConfig::parse("colour = red").is_err());
        assert!(CliConfig::parse("s 3").is_err());
        assert!(CliConfig::parse("seed = -1").is_err());
    }
}
