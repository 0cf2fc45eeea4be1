//! JSON-lines reports. The first line is a header, then one line per record
//! or rejection in suite order, then a summary. All numbers are decimal
//! strings; only the header carries a timestamp.

use std::collections::BTreeMap;

use qmock_core::identities::{ResidualRecord, Verdict};
use qmock_core::qcore::SeriesResult;
use qmock_core::Real;
use serde_json::{json, Map, Value};

use crate::config::{PointSource, SuiteConfig};
use crate::points::{fields, format_value};
use crate::suite::{Entry, Outcome, SuiteRun};

pub const TOOL: &str = env!("CARGO_PKG_NAME");
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

fn config_echo(cfg: &SuiteConfig) -> Value {
    let mut m = Map::new();
    m.insert("identities".into(), json!(cfg.identities.iter().map(|i| i.name()).collect::<Vec<_>>()));
    m.insert("precision".into(), json!(cfg.precision.to_string()));
    m.insert("max_terms".into(), json!(cfg.policy.max_terms.to_string()));
    m.insert("tail_tol".into(), json!(format!("{:e}", cfg.policy.tail_tol)));
    m.insert("consecutive_small".into(), json!(cfg.policy.consecutive_small.to_string()));
    m.insert("assert_tol".into(), json!(format!("{:e}", cfg.assert_tol)));
    match &cfg.points {
        PointSource::File(p) => {
            m.insert("points".into(), json!(p.display().to_string()));
        }
        PointSource::Sampler(s) => {
            m.insert(
                "sampler".into(),
                json!({
                    "seed": s.seed.to_string(),
                    "count": s.count.to_string(),
                    "q_range": [s.q.0.to_string(), s.q.1.to_string()],
                    "z_range": [s.z.0.to_string(), s.z.1.to_string()],
                    "c_range": [s.c.0.to_string(), s.c.1.to_string()],
                    "alpha_values": s.alphas,
                }),
            );
        }
    }
    Value::Object(m)
}

pub fn header(cfg: &SuiteConfig, timestamp: Option<u64>) -> Value {
    let mut h = json!({
        "type": "header",
        "tool": TOOL,
        "version": VERSION,
        "config": config_echo(cfg),
    });
    if let Some(t) = timestamp {
        h["timestamp"] = json!(t.to_string());
    }
    h
}

fn point_value(run: &SuiteRun, index: usize) -> Value {
    let m: Map<String, Value> = fields(&run.points[index]).into_iter().map(|(k, v)| (k, json!(v))).collect();
    Value::Object(m)
}

fn opt_c(v: &Option<qmock_core::HPComplex>, digits: u32) -> Value {
    v.as_ref().map(|x| json!(format_value(x, digits))).unwrap_or(Value::Null)
}

fn opt_r(v: &Option<Real>, digits: u32) -> Value {
    v.as_ref().map(|x| json!(x.to_sci_string(digits))).unwrap_or(Value::Null)
}

pub fn record_value(r: &ResidualRecord, digits: u32) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("lhs".into(), opt_c(&r.lhs, digits));
    m.insert("rhs".into(), opt_c(&r.rhs, digits));
    m.insert("abs_residual".into(), opt_r(&r.abs_residual, digits));
    m.insert("rel_residual".into(), opt_r(&r.rel_residual, digits));
    m.insert("lhs_status".into(), json!(r.lhs_status.as_str()));
    m.insert("rhs_status".into(), json!(r.rhs_status.as_str()));
    m.insert("verdict".into(), json!(r.verdict.name()));
    m.insert("trust".into(), json!(r.identity.trust().name()));
    m.insert("notes".into(), json!(r.notes));
    let extras: Map<String, Value> = r.extras.iter().map(|(k, v)| (k.clone(), json!(format_value(v, digits)))).collect();
    m.insert("extras".into(), Value::Object(extras));
    let inputs: Map<String, Value> = r.inputs.iter().map(|(k, v)| (k.clone(), json!(format_value(v, digits)))).collect();
    m.insert("inputs".into(), Value::Object(inputs));
    m
}

pub fn entry_value(run: &SuiteRun, e: &Entry, digits: u32) -> Value {
    let mut m = Map::new();
    m.insert("identity".into(), json!(e.identity.name()));
    m.insert("variant".into(), e.variant.map(|v| json!(v.name())).unwrap_or(Value::Null));
    m.insert("point_index".into(), json!(e.index.to_string()));
    m.insert("point".into(), point_value(run, e.index));
    match &e.outcome {
        Outcome::Record(r) => {
            m.insert("type".into(), json!("record"));
            m.extend(record_value(r, digits));
        }
        Outcome::Rejection(reason) => {
            m.insert("type".into(), json!("rejection"));
            m.insert("reason".into(), json!(reason));
        }
    }
    Value::Object(m)
}

#[derive(Default)]
struct Tally {
    pass: usize,
    fail: usize,
    report: usize,
    singular: usize,
    rejected: usize,
    rel: Vec<Real>,
}

pub fn summary(run: &SuiteRun, digits: u32) -> Value {
    let mut order: Vec<String> = Vec::new();
    let mut tallies: BTreeMap<String, Tally> = BTreeMap::new();
    for e in &run.entries {
        let key = match e.variant {
            Some(v) => format!("{}/{}", e.identity, v.name()),
            None => e.identity.name().to_string(),
        };
        if !tallies.contains_key(&key) {
            order.push(key.clone());
        }
        let t = tallies.entry(key).or_default();
        match &e.outcome {
            Outcome::Rejection(_) => t.rejected += 1,
            Outcome::Record(r) => {
                match r.verdict {
                    Verdict::Pass => t.pass += 1,
                    Verdict::Fail => t.fail += 1,
                    Verdict::Report => t.report += 1,
                    Verdict::Singular => t.singular += 1,
                }
                if r.verdict != Verdict::Singular {
                    if let Some(x) = &r.rel_residual {
                        t.rel.push(x.clone());
                    }
                }
            }
        }
    }
    let rows: Vec<Value> = order
        .iter()
        .map(|k| {
            let t = tallies.get_mut(k).expect("tallied");
            t.rel.sort();
            let (max, median) = if t.rel.is_empty() {
                (Value::Null, Value::Null)
            } else {
                let n = t.rel.len();
                let med = if n % 2 == 1 {
                    t.rel[n / 2].clone()
                } else {
                    (&t.rel[n / 2 - 1] + &t.rel[n / 2]).mul_pow2(-1)
                };
                (json!(t.rel[n - 1].to_sci_string(digits)), json!(med.to_sci_string(digits)))
            };
            json!({
                "key": k,
                "pass": t.pass.to_string(),
                "fail": t.fail.to_string(),
                "report": t.report.to_string(),
                "singular": t.singular.to_string(),
                "rejected": t.rejected.to_string(),
                "max_rel_residual": max,
                "median_rel_residual": median,
            })
        })
        .collect();
    json!({
        "type": "summary",
        "points": run.points.len().to_string(),
        "records": run.records().count().to_string(),
        "rejections": run.rejections().count().to_string(),
        "identities": rows,
        "exit_code": run.exit_code().to_string(),
    })
}

/// The whole report as JSON lines.
pub fn render(run: &SuiteRun, timestamp: Option<u64>) -> String {
    let digits = run.config.precision;
    let mut out = String::new();
    let mut push = |v: Value| {
        out.push_str(&serde_json::to_string(&v).expect("serializable"));
        out.push('\n');
    };
    push(header(&run.config, timestamp));
    for e in &run.entries {
        push(entry_value(run, e, digits));
    }
    push(summary(run, digits));
    out
}

/// One-line description of a series value for `eval`.
pub fn series_line(label: &str, r: &SeriesResult, digits: u32) -> String {
    format!(
        "{label} value={} terms_used={} tail_estimate={} status={}{}",
        format_value(&r.value, digits),
        r.terms_used,
        r.tail_estimate.to_sci_string(6),
        r.status.as_str(),
        if r.near_pole { " near_pole=true" } else { "" }
    )
}

/// Drops the header timestamp so two reports can be compared.
pub fn strip_timestamp(report: &str) -> String {
    let mut lines = report.lines();
    let mut out = String::new();
    if let Some(first) = lines.next() {
        let mut v: Value = serde_json::from_str(first).expect("header is json");
        if let Some(m) = v.as_object_mut() {
            m.remove("timestamp");
        }
        out.push_str(&serde_json::to_string(&v).expect("serializable"));
        out.push('\n');
    }
    for l in lines {
        out.push_str(l);
        out.push('\n');
    }
    out
}
