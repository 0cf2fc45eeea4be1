//! Suite configuration from a flat `key = value` file and command line
//! overrides.
//!
//! ```text
//! # identities to check, comma or space separated
//! identities = 4.1, 5.1, 7.1
//! precision = 50
//! seed = 7
//! count = 20
//! q_range = 0.1, 0.5
//! ```

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use qmock_core::identities::IdentityId;
use qmock_core::qcore::TruncationPolicy;
use qmock_core::{bits_for_digits, DEFAULT_DIGITS};

use crate::{HarnessError, Result};

pub const KEYS: [&str; 15] = [
    "identities",
    "precision",
    "max_terms",
    "tail_tol",
    "consecutive_small",
    "assert_tol",
    "seed",
    "count",
    "points",
    "out",
    "q_range",
    "z_range",
    "alpha_values",
    "c_range",
    "threads",
];

/// Ranges for seeded random points.
#[derive(Clone, Debug, PartialEq)]
pub struct SamplerSpec {
    pub q: (f64, f64),
    pub z: (f64, f64),
    /// Decimal strings, one of which is drawn per point.
    pub alphas: Vec<String>,
    pub c: (f64, f64),
    pub count: usize,
    pub seed: u64,
}

impl Default for SamplerSpec {
    fn default() -> Self {
        SamplerSpec {
            q: (0.1, 0.5),
            z: (0.1, 0.6),
            alphas: ["-1", "0", "1", "2"].iter().map(|s| s.to_string()).collect(),
            c: (0.05, 0.3),
            count: 10,
            seed: 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum PointSource {
    File(PathBuf),
    Sampler(SamplerSpec),
}

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub identities: Vec<IdentityId>,
    pub points: PointSource,
    pub precision: u32,
    pub policy: TruncationPolicy,
    pub assert_tol: f64,
    pub output: Option<PathBuf>,
    /// Worker threads; 0 lets the pool decide.
    pub threads: usize,
    /// Resolved key/value pairs, echoed in the report header.
    pub echo: BTreeMap<String, String>,
}

impl SuiteConfig {
    pub fn bits(&self) -> u32 {
        bits_for_digits(self.precision)
    }
}

/// Parses `key = value` lines; `#` starts a comment line.
pub fn parse_file_text(text: &str) -> Result<BTreeMap<String, String>> {
    let mut out = BTreeMap::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| HarnessError::Config(format!("line {}: expected key = value", i + 1)))?;
        let k = k.trim().replace('-', "_");
        if !KEYS.contains(&k.as_str()) {
            return Err(HarnessError::Config(format!("line {}: unknown key {k:?}", i + 1)));
        }
        out.insert(k, v.trim().to_string());
    }
    Ok(out)
}

pub fn read_file(path: &Path) -> Result<BTreeMap<String, String>> {
    let text = std::fs::read_to_string(path).map_err(|e| HarnessError::Io(format!("{}: {e}", path.display())))?;
    parse_file_text(&text)
}

fn list(v: &str) -> Vec<&str> {
    v.split(|c: char| c == ',' || c.is_whitespace()).filter(|s| !s.is_empty()).collect()
}

fn num<T: std::str::FromStr>(key: &str, v: &str) -> Result<T> {
    v.trim().parse().map_err(|_| HarnessError::Config(format!("{key}: cannot parse {v:?}")))
}

fn range(key: &str, v: &str) -> Result<(f64, f64)> {
    let parts = list(v);
    if parts.len() != 2 {
        return Err(HarnessError::Config(format!("{key}: expected two numbers, got {v:?}")));
    }
    let (lo, hi): (f64, f64) = (num(key, parts[0])?, num(key, parts[1])?);
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(HarnessError::Config(format!("{key}: empty or invalid range {v:?}")));
    }
    Ok((lo, hi))
}

pub fn parse_identities(v: &str) -> Result<Vec<IdentityId>> {
    let mut ids = Vec::new();
    for s in list(v) {
        let id = IdentityId::parse(s).map_err(|_| HarnessError::Config(format!("unknown identity id {s:?}")))?;
        if !ids.contains(&id) {
            ids.push(id);
        }
    }
    if ids.is_empty() {
        return Err(HarnessError::Config("no identities selected".into()));
    }
    Ok(ids)
}

/// Builds the configuration from resolved key/value pairs. Missing
/// `identities` selects the whole catalog.
pub fn build(kv: &BTreeMap<String, String>) -> Result<SuiteConfig> {
    for k in kv.keys() {
        if !KEYS.contains(&k.as_str()) {
            return Err(HarnessError::Config(format!("unknown key {k:?}")));
        }
    }
    let get = |k: &str| kv.get(k).map(String::as_str);
    let identities = match get("identities") {
        Some(v) => parse_identities(v)?,
        None => IdentityId::ALL.to_vec(),
    };
    let precision: u32 = get("precision").map(|v| num("precision", v)).transpose()?.unwrap_or(DEFAULT_DIGITS);
    if !(5..=2000).contains(&precision) {
        return Err(HarnessError::Config(format!("precision {precision} outside 5..=2000")));
    }
    let mut policy = TruncationPolicy::default();
    if let Some(v) = get("max_terms") {
        policy.max_terms = num("max_terms", v)?;
    }
    if let Some(v) = get("tail_tol") {
        policy.tail_tol = num("tail_tol", v)?;
    }
    if let Some(v) = get("consecutive_small") {
        policy.consecutive_small = num("consecutive_small", v)?;
    }
    policy.validate().map_err(|e| HarnessError::Config(e.to_string()))?;
    let assert_tol: f64 = get("assert_tol").map(|v| num("assert_tol", v)).transpose()?.unwrap_or(1e-30);
    if !(assert_tol > 0.0 && assert_tol < 1.0) {
        return Err(HarnessError::Config(format!("assert_tol {assert_tol} outside (0, 1)")));
    }
    let points = match get("points") {
        Some(p) => PointSource::File(PathBuf::from(p)),
        None => {
            let mut s = SamplerSpec::default();
            if let Some(v) = get("q_range") {
                s.q = range("q_range", v)?;
                if s.q.0 <= -1.0 || s.q.1 >= 1.0 {
                    return Err(HarnessError::Config("q_range must lie inside (-1, 1)".into()));
                }
            }
            if let Some(v) = get("z_range") {
                s.z = range("z_range", v)?;
            }
            if let Some(v) = get("c_range") {
                s.c = range("c_range", v)?;
            }
            if let Some(v) = get("alpha_values") {
                s.alphas = list(v).iter().map(|a| a.to_string()).collect();
                for a in &s.alphas {
                    num::<f64>("alpha_values", a)?;
                }
                if s.alphas.is_empty() {
                    return Err(HarnessError::Config("alpha_values is empty".into()));
                }
            }
            if let Some(v) = get("count") {
                s.count = num("count", v)?;
            }
            if let Some(v) = get("seed") {
                s.seed = num("seed", v)?;
            }
            PointSource::Sampler(s)
        }
    };
    let threads = get("threads").map(|v| num("threads", v)).transpose()?.unwrap_or(0);
    Ok(SuiteConfig {
        identities,
        points,
        precision,
        policy,
        assert_tol,
        output: get("out").map(PathBuf::from),
        threads,
        echo: kv.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_identity_is_named() {
        let kv = parse_file_text("identities = 4.1, 9.9").unwrap();
        let e = build(&kv).unwrap_err();
        assert!(e.to_string().contains("9.9"), "{e}");
        assert_eq!(e.exit_code(), crate::EXIT_CONFIG);
    }

    #[test]
    fn parses_sampler_keys() {
        let kv = parse_file_text("# demo\nidentities = 7.1\nseed = 5\ncount = 3\nq-range = 0.2, 0.4\n").unwrap();
        let c = build(&kv).unwrap();
        assert_eq!(c.identities, vec![IdentityId::I7_1]);
        match c.points {
            PointSource::Sampler(s) => {
                assert_eq!((s.seed, s.count, s.q), (5, 3, (0.2, 0.4)));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(parse_file_text("colour = red").is_err());
        assert!(build(&parse_file_text("q_range = 0.5, 0.1").unwrap()).is_err());
        assert!(build(&parse_file_text("tail_tol = 2").unwrap()).is_err());
    }
}
