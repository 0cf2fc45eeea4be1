#![allow(dead_code)]

use qmock_core::mocktheta::{rel_diff, ParameterPoint};
use qmock_core::qcore::TruncationPolicy;
use qmock_core::{HPComplex, Real, DEFAULT_BITS as P};

pub fn c(s: &str) -> HPComplex {
    HPComplex::parse(s, P).unwrap_or_else(|| panic!("bad literal {s}"))
}

pub fn cc(re: &str, im: &str) -> HPComplex {
    HPComplex::new(c(re).re, c(im).re)
}

pub fn r(s: &str) -> Real {
    Real::parse(s, P).unwrap()
}

/// Tail tolerance well below the 1e-40 assertions.
pub fn tight() -> TruncationPolicy {
    TruncationPolicy { tail_tol: 1e-52, max_terms: 2000, ..TruncationPolicy::default() }
}

pub fn rel(a: &HPComplex, b: &HPComplex) -> f64 {
    rel_diff(a, b).to_f64()
}

pub fn point(q: &str, z: &str, t: &str, alpha: &str) -> ParameterPoint {
    ParameterPoint { q: c(q), z: c(z), t: c(t), alpha: r(alpha), c1: c("0.1"), c2: c("0.2") }
}
