use std::collections::BTreeMap;
use std::path::Path;

use crate::dynatomic::{DEFAULT_DEGREE_CAP, DEFAULT_ZETA_WORK_BUDGET};
use crate::error::{Error, Result};
use crate::factor::{DEFAULT_ORBIT_CAP, DEFAULT_SCAN_CAP};

pub const DEFAULT_PREC: i64 = 32;

pub const KEYS: [&str; 7] = [
    "prec",
    "degree_cap",
    "orbit_cap",
    "scan_cap",
    "zeta_budget",
    "threads",
    "json",
];

/// Resolved tunables: flag or environment, then config file, then default.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Settings {
    pub prec: i64,
    pub degree_cap: usize,
    pub orbit_cap: usize,
    pub scan_cap: u128,
    pub zeta_budget: u128,
    pub threads: Option<usize>,
    pub json: bool,
}

impl Default for Settings {
    fn default() -> Self {
        Settings {
            prec: DEFAULT_PREC,
            degree_cap: DEFAULT_DEGREE_CAP,
            orbit_cap: DEFAULT_ORBIT_CAP,
            scan_cap: DEFAULT_SCAN_CAP,
            zeta_budget: DEFAULT_ZETA_WORK_BUDGET,
            threads: None,
            json: false,
        }
    }
}

/// Parses `key = value` lines; `#` starts a comment.
pub fn parse_config(text: &str) -> Result<BTreeMap<String, String>> {
    let mut out = BTreeMap::new();
    for (no, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("config line {}: expected key = value", no + 1)))?;
        let k = k.trim().replace('-', "_");
        if !KEYS.contains(&k.as_str()) {
            return Err(Error::Parse(format!("config line {}: unknown key {k}", no + 1)));
        }
        out.insert(k, v.trim().to_string());
    }
    Ok(out)
}

pub fn load_config(path: &Path) -> Result<BTreeMap<String, String>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
    parse_config(&text)
}

fn parse_value<T: std::str::FromStr>(key: &str, v: &str) -> Result<T> {
    v.parse()
        .map_err(|_| Error::Parse(format!("bad value for {key}: {v}")))
}

/// Per-key overrides from flags and the environment (already merged by clap).
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub prec: Option<i64>,
    pub degree_cap: Option<usize>,
    pub orbit_cap: Option<usize>,
    pub scan_cap: Option<u128>,
    pub zeta_budget: Option<u128>,
    pub threads: Option<usize>,
    pub json: bool,
}

pub fn resolve(over: &Overrides, file: &BTreeMap<String, String>) -> Result<Settings> {
    let def = Settings::default();
    macro_rules! pick {
        ($field:ident) => {
            match over.$field {
                Some(v) => v,
                None => match file.get(stringify!($field)) {
                    Some(v) => parse_value(stringify!($field), v)?,
                    None => def.$field,
                },
            }
        };
    }
    let threads = match over.threads {
        Some(t) => Some(t),
        None => file.get("threads").map(|v| parse_value("threads", v)).transpose()?,
    };
    let json = over.json
        || match file.get("json") {
            Some(v) => parse_value::<bool>("json", v)?,
            None => false,
        };
    let s = Settings {
        prec: pick!(prec),
        degree_cap: pick!(degree_cap),
        orbit_cap: pick!(orbit_cap),
        scan_cap: pick!(scan_cap),
        zeta_budget: pick!(zeta_budget),
        threads,
        json,
    };
    if s.prec < 1 {
        return Err(Error::InvalidParameter("prec must be at least 1".into()));
    }
    if s.threads == Some(0) {
        return Err(Error::InvalidParameter("threads must be at least 1".into()));
    }
    Ok(s)
}
