//! Seeded random real points. Every value is rounded to six decimals, so a
//! sampled point written to a point file reads back identically.
//!
//! Besides the base keys each point carries the extra parameters used by
//! the general expansions and the continued fraction:
//! `a1, a2` in `[0.5, 0.95]` with `|a1 - a2| >= 0.05`, `b1, b2` in
//! `[0.02, 0.2]` with `b1 b2 / (a1 a2) < z/2`, `lambda` in `[0.05, 1]` and
//! `beta` in `[0, 0.9)`, with `beta = 0` at the first point.

use std::collections::BTreeMap;

use qmock_core::hyper::Param;
use qmock_core::mocktheta::ParameterPoint;
use qmock_core::{HPComplex, Real};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::config::SamplerSpec;
use crate::points::SamplePoint;
use crate::{HarnessError, Result};

const MAX_RETRIES: usize = 1000;

fn round6(x: f64) -> String {
    let s = format!("{x:.6}");
    if s == "-0.000000" {
        "0.000000".into()
    } else {
        s
    }
}

struct Draw {
    rng: ChaCha8Rng,
}

impl Draw {
    fn uniform(&mut self, (lo, hi): (f64, f64)) -> f64 {
        let x: f64 = self.rng.gen_range(lo..hi);
        round6(x).parse().expect("formatted float")
    }

    fn pair(&mut self, r: (f64, f64), gap: f64, what: &str) -> Result<(f64, f64)> {
        for _ in 0..MAX_RETRIES {
            let (a, b) = (self.uniform(r), self.uniform(r));
            if (a - b).abs() >= gap {
                return Ok((a, b));
            }
        }
        Err(HarnessError::Config(format!("{what} range too narrow for a gap of {gap}")))
    }
}

fn c(x: f64, prec: u32) -> HPComplex {
    HPComplex::parse(&round6(x), prec).expect("decimal")
}

pub fn sample(spec: &SamplerSpec, prec: u32) -> Result<Vec<SamplePoint>> {
    if spec.q.0 <= 0.0 && spec.q.1 >= 0.0 {
        return Err(HarnessError::Config("q_range must not contain 0".into()));
    }
    let mut d = Draw { rng: ChaCha8Rng::seed_from_u64(spec.seed) };
    let mut out = Vec::with_capacity(spec.count);
    for i in 0..spec.count {
        let q = d.uniform(spec.q);
        let z = d.uniform(spec.z);
        let alpha = spec.alphas[d.rng.gen_range(0..spec.alphas.len())].clone();
        let (c1, c2) = d.pair(spec.c, 0.01, "c")?;
        let (a1, a2) = d.pair((0.5, 0.95), 0.05, "a")?;
        let mut b = None;
        for _ in 0..MAX_RETRIES {
            let (b1, b2) = (d.uniform((0.02, 0.2)), d.uniform((0.02, 0.2)));
            if b1 * b2 / (a1 * a2) < z.abs() / 2.0 {
                b = Some((b1, b2));
                break;
            }
        }
        let (b1, b2) = b.ok_or_else(|| HarnessError::Config("z range too small for the annulus".into()))?;
        let lambda = d.uniform((0.05, 1.0));
        let beta = if i == 0 { 0.0 } else { d.uniform((0.0, 0.9)) };
        let point = ParameterPoint {
            q: c(q, prec),
            z: c(z, prec),
            t: HPComplex::zero(prec),
            alpha: Real::parse(&alpha, prec).ok_or_else(|| HarnessError::Config(format!("bad alpha {alpha:?}")))?,
            c1: c(c1, prec),
            c2: c(c2, prec),
        };
        let mut extras = BTreeMap::new();
        for (k, v) in [("a1", a1), ("a2", a2), ("b1", b1), ("b2", b2), ("lambda", lambda), ("beta", beta)] {
            extras.insert(k.to_string(), Param::Finite(c(v, prec)));
        }
        out.push(SamplePoint { point, extras });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use qmock_core::DEFAULT_BITS as P;

    #[test]
    fn same_seed_same_points() {
        let spec = SamplerSpec { count: 8, seed: 11, ..SamplerSpec::default() };
        assert_eq!(sample(&spec, P).unwrap(), sample(&spec, P).unwrap());
        let other = SamplerSpec { seed: 12, ..spec.clone() };
        assert_ne!(sample(&spec, P).unwrap(), sample(&other, P).unwrap());
    }

    #[test]
    fn constraints_hold() {
        let spec = SamplerSpec { count: 50, seed: 3, ..SamplerSpec::default() };
        for (i, p) in sample(&spec, P).unwrap().iter().enumerate() {
            let f = |k: &str| p.finite_extra(k, "0").unwrap().re.to_f64();
            assert!((p.point.c1.re.to_f64() - p.point.c2.re.to_f64()).abs() >= 0.01);
            assert!(f("b1") * f("b2") / (f("a1") * f("a2")) < p.point.z.re.to_f64() / 2.0);
            assert_eq!(i == 0, f("beta") == 0.0);
        }
    }
}
