//! Point files: one point per line, `key=value` pairs separated by spaces.
//!
//! ```text
//! q=0.3 z=0.4 t=0 alpha=1 c1=0.15 c2=0.25
//! q=0.25+0.05i z=0.3 alpha=0 a1=inf a2=0.8 b1=0.1 b2=0.2
//! ```
//!
//! `q` and `z` are required. `t` defaults to 0, `alpha` to 1, `c1` and
//! `c2` to 0.1 and 0.2. The optional keys `a1 a2 b1 b2 lambda beta` feed
//! the general expansions and the continued fraction check; `a1`, `a2` may
//! be `inf`. Blank lines and lines starting with `#` are skipped.

use std::collections::BTreeMap;

use qmock_core::hyper::Param;
use qmock_core::mocktheta::ParameterPoint;
use qmock_core::HPComplex;

use crate::{HarnessError, Result};

pub const BASE_KEYS: [&str; 6] = ["q", "z", "t", "alpha", "c1", "c2"];
pub const EXTRA_KEYS: [&str; 6] = ["a1", "a2", "b1", "b2", "lambda", "beta"];

#[derive(Clone, Debug, PartialEq)]
pub struct SamplePoint {
    pub point: ParameterPoint,
    pub extras: BTreeMap<String, Param>,
}

impl SamplePoint {
    pub fn from_point(point: ParameterPoint) -> Self {
        SamplePoint { point, extras: BTreeMap::new() }
    }

    /// Extra parameter, or `default` when absent.
    pub fn extra(&self, key: &str, default: &str) -> Param {
        self.extras
            .get(key)
            .cloned()
            .unwrap_or_else(|| Param::Finite(HPComplex::parse(default, self.point.prec()).expect("valid default")))
    }

    /// Finite extra parameter; `inf` is a usage error here.
    pub fn finite_extra(&self, key: &str, default: &str) -> std::result::Result<HPComplex, String> {
        match self.extra(key, default) {
            Param::Finite(v) => Ok(v),
            Param::Infinite => Err(format!("{key} = inf is not allowed")),
        }
    }
}

/// Decimal digits that reproduce a `prec`-bit value exactly on parsing.
pub fn roundtrip_digits(prec: u32) -> u32 {
    (prec as f64 * std::f64::consts::LOG10_2).ceil() as u32 + 2
}

fn parse_value(key: &str, v: &str, prec: u32) -> std::result::Result<Param, String> {
    if v == "inf" {
        return if key == "a1" || key == "a2" { Ok(Param::Infinite) } else { Err(format!("{key} cannot be inf")) };
    }
    HPComplex::parse(v, prec).map(Param::Finite).ok_or_else(|| format!("bad number {v:?} for {key}"))
}

pub fn parse_line(line: &str, prec: u32) -> std::result::Result<SamplePoint, String> {
    let mut base: BTreeMap<&str, HPComplex> = BTreeMap::new();
    let mut extras = BTreeMap::new();
    for tok in line.split_whitespace() {
        let (k, v) = tok.split_once('=').ok_or_else(|| format!("expected key=value, got {tok:?}"))?;
        if BASE_KEYS.contains(&k) {
            let val = match parse_value(k, v, prec)? {
                Param::Finite(x) => x,
                Param::Infinite => unreachable!(),
            };
            if base.insert(k, val).is_some() {
                return Err(format!("duplicate key {k}"));
            }
        } else if EXTRA_KEYS.contains(&k) {
            if extras.insert(k.to_string(), parse_value(k, v, prec)?).is_some() {
                return Err(format!("duplicate key {k}"));
            }
        } else {
            return Err(format!("unknown key {k:?}"));
        }
    }
    let mut take = |k: &str, default: Option<&str>| -> std::result::Result<HPComplex, String> {
        match (base.remove(k), default) {
            (Some(v), _) => Ok(v),
            (None, Some(d)) => Ok(HPComplex::parse(d, prec).expect("valid default")),
            (None, None) => Err(format!("missing {k}")),
        }
    };
    let q = take("q", None)?;
    let z = take("z", None)?;
    let t = take("t", Some("0"))?;
    let alpha = take("alpha", Some("1"))?;
    let c1 = take("c1", Some("0.1"))?;
    let c2 = take("c2", Some("0.2"))?;
    if !alpha.im.is_zero() {
        return Err("alpha must be real".into());
    }
    Ok(SamplePoint { point: ParameterPoint { q, z, t, alpha: alpha.re, c1, c2 }, extras })
}

pub fn format_value(v: &HPComplex, digits: u32) -> String {
    v.to_sci_string(digits)
}

/// Shortest decimal form that parses back to exactly `v`.
pub fn shortest(v: &HPComplex) -> String {
    let prec = v.prec();
    let max = roundtrip_digits(prec);
    for d in 1..max {
        let s = v.to_sci_string(d);
        if HPComplex::parse(&s, prec).as_ref() == Some(v) {
            return s;
        }
    }
    v.to_sci_string(max)
}

/// Point values as `(key, text)` pairs in file order, each in its
/// shortest exact form.
pub fn fields(p: &SamplePoint) -> Vec<(String, String)> {
    let pt = &p.point;
    let mut out = vec![
        ("q".to_string(), shortest(&pt.q)),
        ("z".to_string(), shortest(&pt.z)),
        ("t".to_string(), shortest(&pt.t)),
        ("alpha".to_string(), shortest(&HPComplex::from_real(pt.alpha.clone()))),
        ("c1".to_string(), shortest(&pt.c1)),
        ("c2".to_string(), shortest(&pt.c2)),
    ];
    for k in EXTRA_KEYS {
        if let Some(v) = p.extras.get(k) {
            let s = match v {
                Param::Finite(v) => shortest(v),
                Param::Infinite => "inf".into(),
            };
            out.push((k.to_string(), s));
        }
    }
    out
}

pub fn format_line(p: &SamplePoint) -> String {
    fields(p).into_iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(" ")
}

pub fn parse_points(text: &str, prec: u32) -> Result<Vec<SamplePoint>> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        out.push(parse_line(line, prec).map_err(|e| HarnessError::Config(format!("point file line {}: {e}", i + 1)))?);
    }
    Ok(out)
}

pub fn format_points(points: &[SamplePoint]) -> String {
    let mut s = String::new();
    for p in points {
        s.push_str(&format_line(p));
        s.push('\n');
    }
    s
}

pub fn read_points(path: &std::path::Path, prec: u32) -> Result<Vec<SamplePoint>> {
    let text = std::fs::read_to_string(path).map_err(|e| HarnessError::Io(format!("{}: {e}", path.display())))?;
    parse_points(&text, prec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use qmock_core::{Real, DEFAULT_BITS as P};

    #[test]
    fn defaults_and_extras() {
        let p = parse_line("q=0.3 z=0.4 a1=inf beta=0.2", P).unwrap();
        assert!(p.point.t.is_zero());
        assert_eq!(p.point.alpha, Real::from_i64(1, P));
        assert_eq!(p.extra("a1", "0.6"), Param::Infinite);
        assert_eq!(p.finite_extra("a2", "0.8").unwrap(), HPComplex::parse("0.8", P).unwrap());
    }

    #[test]
    fn rejects_malformed_lines() {
        assert!(parse_line("z=0.4", P).is_err());
        assert!(parse_line("q=0.3 z=0.4 w=1", P).is_err());
        assert!(parse_line("q=0.3 z=0.4 alpha=1+1i", P).is_err());
        assert!(parse_line("q=0.3 z=inf", P).is_err());
        assert!(parse_line("q=0.3 q=0.2 z=1", P).is_err());
    }

    #[test]
    fn line_round_trip() {
        let p = parse_line("q=0.25+0.05i z=0.3 t=0.001 alpha=-0.5 c1=0.1 c2=0.15 a1=inf b2=0.2", P).unwrap();
        assert_eq!(parse_line(&format_line(&p), P).unwrap(), p);
        assert!(format_line(&p).starts_with("q=2.5e-1+5e-2i z=3e-1 t=1e-3 alpha=-5e-1"), "{}", format_line(&p));
    }
}
