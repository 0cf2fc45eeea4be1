//! Runs every selected identity at every point.

use qmock_core::contfrac::{check_cf_7_1, CFSpec};
use qmock_core::identities::{
    check, check_general_5_1, check_general_6_1, check_slater_4_1, CheckOptions, IdentityId, ResidualRecord, Trust,
    Variant, Verdict,
};
use qmock_core::{Error, Real};
use rayon::prelude::*;

use crate::config::{PointSource, SuiteConfig};
use crate::points::{read_points, SamplePoint};
use crate::sampler::sample;
use crate::{HarnessError, Result, EXIT_FAIL, EXIT_OK};

#[derive(Clone, Debug)]
pub enum Outcome {
    Record(ResidualRecord),
    /// The point does not satisfy the identity's preconditions.
    Rejection(String),
}

#[derive(Clone, Debug)]
pub struct Entry {
    pub identity: IdentityId,
    pub variant: Option<Variant>,
    pub index: usize,
    pub outcome: Outcome,
}

#[derive(Clone, Debug)]
pub struct SuiteRun {
    pub config: SuiteConfig,
    pub points: Vec<SamplePoint>,
    pub entries: Vec<Entry>,
}

impl SuiteRun {
    pub fn records(&self) -> impl Iterator<Item = &ResidualRecord> {
        self.entries.iter().filter_map(|e| match &e.outcome {
            Outcome::Record(r) => Some(r),
            Outcome::Rejection(_) => None,
        })
    }

    pub fn rejections(&self) -> impl Iterator<Item = (&Entry, &str)> {
        self.entries.iter().filter_map(|e| match &e.outcome {
            Outcome::Rejection(r) => Some((e, r.as_str())),
            Outcome::Record(_) => None,
        })
    }

    /// Some established identity failed its tolerance.
    pub fn failed(&self) -> bool {
        self.records().any(|r| r.identity.trust() == Trust::Established && r.verdict == Verdict::Fail)
    }

    pub fn exit_code(&self) -> i32 {
        if self.failed() {
            EXIT_FAIL
        } else {
            EXIT_OK
        }
    }
}

pub fn load_points(cfg: &SuiteConfig) -> Result<Vec<SamplePoint>> {
    match &cfg.points {
        PointSource::File(p) => read_points(p, cfg.bits()),
        PointSource::Sampler(s) => sample(s, cfg.bits()),
    }
}

/// Reason a point is unusable for every identity, if any.
fn gate(p: &SamplePoint) -> Option<String> {
    let q = &p.point.q;
    let one = Real::one(q.prec());
    if q.is_zero() || q.norm_sqr() >= one {
        return Some(format!("|q| = {} is not in (0, 1)", q.abs()));
    }
    None
}

fn finite(sp: &SamplePoint, key: &str, default: &str) -> std::result::Result<qmock_core::HPComplex, Error> {
    sp.finite_extra(key, default).map_err(Error::Usage)
}

fn run_one(id: IdentityId, variant: Variant, sp: &SamplePoint, opts: &CheckOptions) -> std::result::Result<ResidualRecord, Error> {
    let p = &sp.point;
    let a = || [sp.extra("a1", "0.6"), sp.extra("a2", "0.8")];
    let b = || -> std::result::Result<_, Error> { Ok([finite(sp, "b1", "0.1")?, finite(sp, "b2", "0.2")?]) };
    match id {
        IdentityId::I4_1 => check_slater_4_1(p, &a(), &b()?, opts),
        IdentityId::I5_1 => check_general_5_1(p, &a(), &b()?, opts),
        IdentityId::I6_1 => check_general_6_1(p, &a(), &b()?, opts),
        IdentityId::I7_1 => {
            let lambda = match sp.extras.get("lambda") {
                Some(_) => finite(sp, "lambda", "0")?,
                None => p.z.clone(),
            };
            let spec = CFSpec::new(lambda, finite(sp, "beta", "0")?, p.q.clone(), 0);
            check_cf_7_1(&spec, opts)
        }
        _ => check(id, variant, p, opts),
    }
}

/// Evaluates one identity at one point. Precondition failures become
/// rejections; poles and divergence become singular records.
pub fn evaluate(id: IdentityId, variant: Option<Variant>, sp: &SamplePoint, opts: &CheckOptions) -> Outcome {
    if let Some(reason) = gate(sp) {
        return Outcome::Rejection(reason);
    }
    match run_one(id, variant.unwrap_or(Variant::Derived), sp, opts) {
        Ok(mut r) => {
            r.variant = variant;
            Outcome::Record(r)
        }
        Err(e) => match e.root() {
            Error::Domain(_) | Error::AnnulusViolation(_) | Error::Usage(_) => Outcome::Rejection(e.to_string()),
            _ => Outcome::Record(ResidualRecord::singular(id, variant, sp.point.clone(), &e)),
        },
    }
}

/// `(identity, point, variant)` triples in report order.
pub fn tasks(ids: &[IdentityId], n_points: usize) -> Vec<(IdentityId, Option<Variant>, usize)> {
    let mut out = Vec::new();
    for &id in ids {
        for i in 0..n_points {
            if id.has_variants() {
                for v in Variant::BOTH {
                    out.push((id, Some(v), i));
                }
            } else {
                out.push((id, None, i));
            }
        }
    }
    out
}

pub fn run_suite(cfg: &SuiteConfig) -> Result<SuiteRun> {
    let points = load_points(cfg)?;
    let opts = CheckOptions { policy: cfg.policy.clone(), assert_tol: cfg.assert_tol };
    let work = tasks(&cfg.identities, points.len());
    let go = || -> Vec<Entry> {
        work.par_iter()
            .map(|&(identity, variant, index)| Entry {
                identity,
                variant,
                index,
                outcome: evaluate(identity, variant, &points[index], &opts),
            })
            .collect()
    };
    let entries = if cfg.threads > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.threads)
            .build()
            .map_err(|e| HarnessError::Config(format!("thread pool: {e}")))?
            .install(go)
    } else {
        go()
    };
    Ok(SuiteRun { config: cfg.clone(), points, entries })
}
