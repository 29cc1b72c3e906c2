//! Line-based `key = value` scan configuration. `#` starts a comment; blank
//! lines are ignored. Command-line overrides use the same keys and win over
//! file values.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::scan::{AxisRange, LegMode, ObservableSet, ScanConfig};
use crate::{Error, Result};

pub const KEYS: [&str; 17] = [
    "n_rungs",
    "mode",
    "alpha_min",
    "alpha_max",
    "alpha_steps",
    "delta_min",
    "delta_max",
    "delta_steps",
    "observables",
    "tol",
    "max_iter",
    "max_krylov",
    "seed",
    "workers",
    "ggm_max_part",
    "cache_dir",
    "record_timing",
];

/// A value supplied outside the file, e.g. `--alpha-max 1.5`. `location`
/// names it in error messages.
#[derive(Debug, Clone, PartialEq)]
pub struct ConfigOverride {
    pub key: String,
    pub value: String,
    pub location: String,
}

impl ConfigOverride {
    /// Override from a long flag name such as `--n-rungs`.
    pub fn flag(flag: &str, value: impl Into<String>) -> Self {
        ConfigOverride {
            key: flag.trim_start_matches('-').replace('-', "_"),
            value: value.into(),
            location: flag.to_string(),
        }
    }
}

struct Entry {
    value: String,
    location: String,
}

fn err(location: &str, message: impl Into<String>) -> Error {
    Error::Config {
        location: location.to_string(),
        message: message.into(),
    }
}

fn check_key(key: &str, location: &str) -> Result<&'static str> {
    KEYS.iter()
        .find(|k| **k == key)
        .copied()
        .ok_or_else(|| err(location, format!("unknown key {key:?}")))
}

fn read_entries(text: &str, source: &str) -> Result<BTreeMap<&'static str, Entry>> {
    let mut entries = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let location = format!("{source} line {}", i + 1);
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| err(&location, format!("expected key = value, got {line:?}")))?;
        let key = check_key(key.trim(), &location)?;
        if let Some(prev) = entries.get(key) {
            let prev: &Entry = prev;
            return Err(err(
                &location,
                format!("duplicate key {key:?} (first set at {})", prev.location),
            ));
        }
        entries.insert(
            key,
            Entry {
                value: value.trim().to_string(),
                location,
            },
        );
    }
    Ok(entries)
}

fn parse_value<T: FromStr>(entry: &Entry, key: &str) -> Result<T>
where
    T::Err: std::fmt::Display,
{
    entry
        .value
        .parse()
        .map_err(|e| err(&entry.location, format!("{key}: cannot parse {:?}: {e}", entry.value)))
}

fn parse_seed(entry: &Entry) -> Result<u64> {
    let v = entry.value.as_str();
    let parsed = match v.strip_prefix("0x").or_else(|| v.strip_prefix("0X")) {
        Some(hex) => u64::from_str_radix(hex, 16).map_err(|e| e.to_string()),
        None => v.parse::<u64>().map_err(|e| e.to_string()),
    };
    parsed.map_err(|e| err(&entry.location, format!("seed: cannot parse {v:?}: {e}")))
}

fn parse_bool(entry: &Entry, key: &str) -> Result<bool> {
    match entry.value.as_str() {
        "true" | "1" | "yes" => Ok(true),
        "false" | "0" | "no" => Ok(false),
        v => Err(err(&entry.location, format!("{key}: expected true or false, got {v:?}"))),
    }
}

fn build(entries: &BTreeMap<&'static str, Entry>) -> Result<ScanConfig> {
    let mut c = ScanConfig::default();
    for (&key, entry) in entries {
        match key {
            "n_rungs" => c.n_rungs = parse_value(entry, key)?,
            "mode" => c.mode = parse_value::<LegMode>(entry, key)?,
            "alpha_min" => c.alpha.min = parse_value(entry, key)?,
            "alpha_max" => c.alpha.max = parse_value(entry, key)?,
            "alpha_steps" => c.alpha.steps = parse_value(entry, key)?,
            "delta_min" => c.delta.min = parse_value(entry, key)?,
            "delta_max" => c.delta.max = parse_value(entry, key)?,
            "delta_steps" => c.delta.steps = parse_value(entry, key)?,
            "observables" => c.observables = parse_value::<ObservableSet>(entry, key)?,
            "tol" => c.solver.tol = parse_value(entry, key)?,
            "max_iter" => c.solver.max_iter = parse_value(entry, key)?,
            "max_krylov" => c.solver.max_krylov = parse_value(entry, key)?,
            "seed" => c.solver.seed = parse_seed(entry)?,
            "workers" => c.workers = parse_value(entry, key)?,
            "ggm_max_part" => {
                c.ggm_max_part = match entry.value.as_str() {
                    "" | "none" => None,
                    _ => Some(parse_value(entry, key)?),
                }
            }
            "cache_dir" => {
                c.cache_dir = (!entry.value.is_empty()).then(|| PathBuf::from(&entry.value))
            }
            "record_timing" => c.record_timing = parse_bool(entry, key)?,
            _ => unreachable!("keys are checked on insertion"),
        }
    }
    validate(&c, entries)?;
    Ok(c)
}

/// Runs [`ScanConfig::validate`] piecewise so each failure names where the
/// offending values came from.
fn validate(c: &ScanConfig, entries: &BTreeMap<&'static str, Entry>) -> Result<()> {
    let locate = |keys: &[&str]| -> String {
        let found: Vec<&str> = keys
            .iter()
            .filter_map(|k| entries.get(k).map(|e| e.location.as_str()))
            .collect();
        if found.is_empty() {
            "defaults".to_string()
        } else {
            found.join(", ")
        }
    };
    let checks: [(&[&str], Result<()>); 4] = [
        (&["alpha_min", "alpha_max", "alpha_steps"], c.alpha.validate("alpha")),
        (&["delta_min", "delta_max", "delta_steps"], c.delta.validate("delta")),
        (&["tol", "max_iter", "max_krylov"], c.solver.validate()),
        (&["n_rungs", "ggm_max_part"], c.validate()),
    ];
    for (keys, result) in checks {
        if let Err(e) = result {
            let message = match e {
                Error::InvalidScan(m) => m,
                other => other.to_string(),
            };
            return Err(err(&locate(keys), message));
        }
    }
    Ok(())
}

/// Parses config text; `source` labels locations in errors.
pub fn parse_config_str(text: &str, source: &str) -> Result<ScanConfig> {
    build(&read_entries(text, source)?)
}

/// Reads an optional config file, applies overrides, validates.
pub fn load_config(path: Option<&Path>, overrides: &[ConfigOverride]) -> Result<ScanConfig> {
    let mut entries = match path {
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| Error::io(p, e))?;
            read_entries(&text, &p.display().to_string())?
        }
        None => BTreeMap::new(),
    };
    for o in overrides {
        let key = check_key(&o.key, &o.location)?;
        entries.insert(
            key,
            Entry {
                value: o.value.trim().to_string(),
                location: o.location.clone(),
            },
        );
    }
    build(&entries)
}

/// Config text that parses back to `config`.
pub fn render_config(config: &ScanConfig) -> String {
    let mut s = String::new();
    let axis = |s: &mut String, name: &str, a: &AxisRange| {
        let _ = writeln!(s, "{name}_min = {:?}", a.min);
        let _ = writeln!(s, "{name}_max = {:?}", a.max);
        let _ = writeln!(s, "{name}_steps = {}", a.steps);
    };
    let _ = writeln!(s, "n_rungs = {}", config.n_rungs);
    let _ = writeln!(s, "mode = {}", config.mode);
    axis(&mut s, "alpha", &config.alpha);
    axis(&mut s, "delta", &config.delta);
    let _ = writeln!(s, "observables = {}", config.observables);
    let _ = writeln!(s, "tol = {:?}", config.solver.tol);
    let _ = writeln!(s, "max_iter = {}", config.solver.max_iter);
    let _ = writeln!(s, "max_krylov = {}", config.solver.max_krylov);
    let _ = writeln!(s, "seed = {:#x}", config.solver.seed);
    let _ = writeln!(s, "workers = {}", config.workers);
    match config.ggm_max_part {
        Some(m) => {
            let _ = writeln!(s, "ggm_max_part = {m}");
        }
        None => s.push_str("ggm_max_part = none\n"),
    }
    if let Some(dir) = &config.cache_dir {
        let _ = writeln!(s, "cache_dir = {}", dir.display());
    }
    let _ = writeln!(s, "record_timing = {}", config.record_timing);
    s
}
