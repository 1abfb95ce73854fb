use std::collections::BTreeMap;
use std::fmt::Display;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use crate::error::CliError;

/// Resolves options as flag, then config-file entry, then default, and logs
/// every resolved value for the run manifest.
#[derive(Debug, Default)]
pub struct Resolver {
    config: BTreeMap<String, String>,
    resolved: BTreeMap<String, String>,
}

impl Resolver {
    pub fn new(config: BTreeMap<String, String>) -> Self {
        Resolver {
            config,
            resolved: BTreeMap::new(),
        }
    }

    pub fn from_file(path: Option<&Path>) -> Result<Self, CliError> {
        match path {
            None => Ok(Self::default()),
            Some(p) => {
                let text =
                    fs::read_to_string(p).map_err(|e| CliError::Config(format!("cannot read {}: {e}", p.display())))?;
                Ok(Self::new(parse_config(&text)?))
            }
        }
    }

    fn config_value<T: FromStr>(&mut self, key: &str) -> Result<Option<T>, CliError>
    where
        T::Err: Display,
    {
        match self.config.remove(key) {
            None => Ok(None),
            Some(raw) => raw
                .parse()
                .map(Some)
                .map_err(|e| CliError::Config(format!("config key `{key}`: cannot parse `{raw}`: {e}"))),
        }
    }

    pub fn value<T>(&mut self, key: &str, flag: Option<T>, default: T) -> Result<T, CliError>
    where
        T: FromStr + Display,
        T::Err: Display,
    {
        let from_config = self.config_value(key)?;
        let v = flag.or(from_config).unwrap_or(default);
        self.resolved.insert(key.to_string(), v.to_string());
        Ok(v)
    }

    pub fn optional<T>(&mut self, key: &str, flag: Option<T>) -> Result<Option<T>, CliError>
    where
        T: FromStr + Display,
        T::Err: Display,
    {
        let from_config = self.config_value(key)?;
        let v = flag.or(from_config);
        if let Some(v) = &v {
            self.resolved.insert(key.to_string(), v.to_string());
        }
        Ok(v)
    }

    pub fn list<T>(&mut self, key: &str, flag: Option<Vec<T>>, default: Vec<T>) -> Result<Vec<T>, CliError>
    where
        T: FromStr + Display,
        T::Err: Display,
    {
        let from_config = match self.config.remove(key) {
            None => None,
            Some(raw) => Some(parse_list(key, &raw)?),
        };
        let v = flag.or(from_config).unwrap_or(default);
        let joined: Vec<String> = v.iter().map(|x| x.to_string()).collect();
        self.resolved.insert(key.to_string(), joined.join(","));
        Ok(v)
    }

    pub fn optional_list<T>(&mut self, key: &str, flag: Option<Vec<T>>) -> Result<Option<Vec<T>>, CliError>
    where
        T: FromStr + Display,
        T::Err: Display,
    {
        if flag.is_none() && !self.config.contains_key(key) {
            return Ok(None);
        }
        self.list(key, flag, Vec::new()).map(Some)
    }

    pub fn switch(&mut self, key: &str, flag: bool) -> Result<bool, CliError> {
        let from_config: Option<bool> = self.config_value(key)?;
        let v = flag || from_config.unwrap_or(false);
        self.resolved.insert(key.to_string(), v.to_string());
        Ok(v)
    }

    /// Fails on config keys that no option consumed.
    pub fn finish(self) -> Result<BTreeMap<String, String>, CliError> {
        if let Some(key) = self.config.keys().next() {
            return Err(CliError::Config(format!("unknown config key `{key}`")));
        }
        Ok(self.resolved)
    }
}

/// `key = value` lines; blank lines and `#` comments are skipped.
pub fn parse_config(text: &str) -> Result<BTreeMap<String, String>, CliError> {
    let mut out = BTreeMap::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| CliError::Config(format!("line {}: expected key = value", i + 1)))?;
        let key = key.trim().replace('_', "-");
        if out.insert(key.clone(), value.trim().to_string()).is_some() {
            return Err(CliError::Config(format!("line {}: duplicate key `{key}`", i + 1)));
        }
    }
    Ok(out)
}

fn parse_list<T: FromStr>(key: &str, raw: &str) -> Result<Vec<T>, CliError>
where
    T::Err: Display,
{
    raw.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse()
                .map_err(|e| CliError::Config(format!("config key `{key}`: cannot parse `{s}`: {e}")))
        })
        .collect()
}

/// Inclusive `start:stop:count` range of evenly spaced values.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Range {
    pub start: f64,
    pub stop: f64,
    pub count: usize,
}

impl Range {
    pub fn values(&self) -> Vec<f64> {
        match self.count {
            0 => Vec::new(),
            1 => vec![self.start],
            n => {
                let step = (self.stop - self.start) / (n - 1) as f64;
                (0..n)
                    .map(|i| {
                        if i + 1 == n {
                            self.stop
                        } else {
                            self.start + step * i as f64
                        }
                    })
                    .collect()
            }
        }
    }
}

impl FromStr for Range {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(':').map(str::trim).collect();
        let [a, b, n] = parts.as_slice() else {
            return Err(format!("expected start:stop:count, got `{s}`"));
        };
        let start: f64 = a.parse().map_err(|e| format!("start `{a}`: {e}"))?;
        let stop: f64 = b.parse().map_err(|e| format!("stop `{b}`: {e}"))?;
        let count: usize = n.parse().map_err(|e| format!("count `{n}`: {e}"))?;
        if !start.is_finite() || !stop.is_finite() {
            return Err("range bounds must be finite".into());
        }
        Ok(Range { start, stop, count })
    }
}

impl Display for Range {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}:{}:{}", self.start, self.stop, self.count)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flag_beats_config_beats_default() {
        let cfg = parse_config("n = 60\ngamma = 2 # comment\n").unwrap();
        let mut r = Resolver::new(cfg);
        assert_eq!(r.value("n", Some(70usize), 50).unwrap(), 70);
        assert_eq!(r.value("gamma", None, 0.0).unwrap(), 2.0);
        assert_eq!(r.value("length", None, 1.5).unwrap(), 1.5);
        let log = r.finish().unwrap();
        assert_eq!(log["n"], "70");
        assert_eq!(log["gamma"], "2");
    }

    #[test]
    fn unknown_and_malformed_keys_rejected() {
        let r = Resolver::new(parse_config("typo = 1").unwrap());
        assert!(r.finish().is_err());
        assert!(parse_config("no equals sign").is_err());
        assert!(parse_config("a = 1\na = 2").is_err());
        let mut r = Resolver::new(parse_config("n = ten").unwrap());
        assert!(r.value("n", None, 1usize).is_err());
    }

    #[test]
    fn lists_and_underscores() {
        let mut r = Resolver::new(parse_config("v_plus = 4\ngammas = 0, 5 ,10").unwrap());
        assert_eq!(r.list("gammas", None, vec![1.0]).unwrap(), vec![0.0, 5.0, 10.0]);
        assert_eq!(r.value("v-plus", None, 0.0).unwrap(), 4.0);
    }

    #[test]
    fn ranges() {
        let r: Range = "0:1:5".parse().unwrap();
        assert_eq!(r.values(), vec![0.0, 0.25, 0.5, 0.75, 1.0]);
        assert!("0:1:0".parse::<Range>().unwrap().values().is_empty());
        assert_eq!("2:9:1".parse::<Range>().unwrap().values(), vec![2.0]);
        assert!("0:1".parse::<Range>().is_err());
    }
}
