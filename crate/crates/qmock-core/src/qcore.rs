//! q-Pochhammer symbols, truncation policy and series results.

use alloc::format;
use alloc::vec::Vec;

use crate::{Error, HPComplex, Real, Result};

/// Stopping rule shared by every infinite sum and product.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncationPolicy {
    pub max_terms: usize,
    /// Relative size below which a term or product factor counts as small.
    pub tail_tol: f64,
    /// Number of successive small terms required before stopping.
    pub consecutive_small: usize,
    /// `|1 - a q^j|` below this flags the result as near a pole.
    pub near_pole_tol: f64,
}

impl Default for TruncationPolicy {
    fn default() -> Self {
        TruncationPolicy { max_terms: 500, tail_tol: 1e-40, consecutive_small: 3, near_pole_tol: 1e-20 }
    }
}

impl TruncationPolicy {
    pub fn validate(&self) -> Result<()> {
        if self.max_terms == 0 || self.consecutive_small == 0 {
            return Err(Error::Domain("max_terms and consecutive_small must be positive".into()));
        }
        if !(self.tail_tol > 0.0 && self.tail_tol < 1.0) {
            return Err(Error::Domain(format!("tail_tol {} outside (0, 1)", self.tail_tol)));
        }
        Ok(())
    }

    pub(crate) fn log2_tol(&self) -> f64 {
        libm::log2(self.tail_tol)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SeriesStatus {
    Converged,
    Truncated,
    Singular,
}

impl SeriesStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            SeriesStatus::Converged => "converged",
            SeriesStatus::Truncated => "truncated",
            SeriesStatus::Singular => "singular",
        }
    }

    /// The less trustworthy of two statuses.
    pub fn worst(self, other: SeriesStatus) -> SeriesStatus {
        self.max(other)
    }
}

/// Value of a truncated sum or product with its bookkeeping.
#[derive(Clone, Debug)]
pub struct SeriesResult {
    pub value: HPComplex,
    pub terms_used: usize,
    /// Estimated relative size of the neglected tail.
    pub tail_estimate: Real,
    pub status: SeriesStatus,
    /// Some factor `1 - a q^j` came within the near-pole tolerance of zero.
    pub near_pole: bool,
}

impl SeriesResult {
    pub fn exact(value: HPComplex, terms_used: usize) -> Self {
        let prec = value.prec();
        SeriesResult { value, terms_used, tail_estimate: Real::zero(prec), status: SeriesStatus::Converged, near_pole: false }
    }

    /// Product of two results; bookkeeping is combined conservatively.
    pub fn times(&self, other: &SeriesResult) -> SeriesResult {
        SeriesResult {
            value: &self.value * &other.value,
            terms_used: self.terms_used + other.terms_used,
            tail_estimate: &self.tail_estimate + &other.tail_estimate,
            status: self.status.worst(other.status),
            near_pole: self.near_pole || other.near_pole,
        }
    }
}

pub(crate) fn check_base(q: &HPComplex) -> Result<()> {
    if q.is_zero() || q.norm_sqr() >= Real::one(q.prec()) {
        return Err(Error::Domain(format!("base q = {q} must satisfy 0 < |q| < 1")));
    }
    Ok(())
}

/// Lazily extended table of `q^i`, `i >= 0`, built by repeated multiplication.
#[derive(Clone, Debug)]
pub struct QPowers {
    pows: Vec<HPComplex>,
}

impl QPowers {
    pub fn new(q: &HPComplex) -> Self {
        QPowers { pows: alloc::vec![HPComplex::one(q.prec()), q.clone()] }
    }

    pub fn q(&self) -> &HPComplex {
        &self.pows[1]
    }

    pub fn get(&mut self, i: usize) -> &HPComplex {
        while self.pows.len() <= i {
            let next = &self.pows[self.pows.len() - 1] * &self.pows[1];
            self.pows.push(next);
        }
        &self.pows[i]
    }

    /// `a q^e` for any integer `e`; negative powers divide.
    pub fn shift(&mut self, a: &HPComplex, e: i64) -> HPComplex {
        if e >= 0 {
            a * self.get(e as usize)
        } else {
            a / self.get(e.unsigned_abs() as usize)
        }
    }

    /// `q^e` for any integer `e`.
    pub fn pow(&mut self, e: i64) -> HPComplex {
        let one = HPComplex::one(self.pows[0].prec());
        self.shift(&one, e)
    }
}

/// Value of a finite Pochhammer symbol, allowing for exact zeros and poles.
#[derive(Clone, Debug)]
pub enum PochValue {
    Finite(HPComplex),
    /// Some factor `1 - a q^{kj}` with `0 <= j < n` vanished.
    Zero,
    /// Negative index and some `1 - a q^{-km}` vanished.
    Pole,
}

/// `(a; q^k)_n` for any integer `n`, using the cached powers of `q`.
pub fn qpoch_value(a: &HPComplex, k: u32, n: i64, pw: &mut QPowers) -> PochValue {
    let prec = a.prec().max(pw.q().prec());
    let one = HPComplex::one(prec);
    if a.is_zero() || n == 0 {
        return PochValue::Finite(one);
    }
    let mut acc = one.clone();
    if n > 0 {
        for j in 0..n {
            let f = &one - &pw.shift(a, k as i64 * j);
            if f.is_zero() {
                return PochValue::Zero;
            }
            acc = &acc * &f;
        }
        PochValue::Finite(acc)
    } else {
        for m in 1..=(-n) {
            let f = &one - &pw.shift(a, -(k as i64) * m);
            if f.is_zero() {
                return PochValue::Pole;
            }
            acc = &acc * &f;
        }
        PochValue::Finite(acc.recip().expect("nonzero product"))
    }
}

/// `(a; q^k)_n`. Negative `n` uses `1 / prod_{m=1}^{|n|} (1 - a q^{-km})`.
pub fn qpoch_finite(a: &HPComplex, q: &HPComplex, k: u32, n: i64) -> Result<HPComplex> {
    check_base(q)?;
    if k == 0 {
        return Err(Error::Domain("base exponent k must be positive".into()));
    }
    let mut pw = QPowers::new(q);
    match qpoch_value(a, k, n, &mut pw) {
        PochValue::Finite(v) => Ok(v),
        PochValue::Zero => Ok(HPComplex::zero(a.prec())),
        PochValue::Pole => Err(Error::Pole(format!("({a}; q^{k})_{n} has a vanishing factor"))),
    }
}

/// `(a; q^k)_inf`, truncated once the factors `a q^{km}` stay below `tail_tol`
/// and the estimated remaining correction does too.
pub fn qpoch_infinite(a: &HPComplex, q: &HPComplex, k: u32, policy: &TruncationPolicy) -> Result<SeriesResult> {
    check_base(q)?;
    policy.validate()?;
    if k == 0 {
        return Err(Error::Domain("base exponent k must be positive".into()));
    }
    let prec = a.prec().max(q.prec());
    let one = HPComplex::one(prec);
    if a.is_zero() {
        return Ok(SeriesResult::exact(one, 0));
    }
    let qk = q.powi(k as i64).expect("nonzero base");
    let log_qk = qk.log2_abs();
    // sum_{j >= 1} |q^k|^j relative to the current factor
    let geo = log_qk - libm::log2(1.0 - libm::exp2(log_qk));
    let tol = policy.log2_tol();
    let near = libm::log2(policy.near_pole_tol);
    let mut x = a.clone();
    let mut acc = one.clone();
    let mut small = 0usize;
    let mut near_pole = false;
    for m in 0..policy.max_terms {
        let f = &one - &x;
        if f.is_zero() {
            return Ok(SeriesResult {
                value: HPComplex::zero(prec),
                terms_used: m + 1,
                tail_estimate: Real::zero(prec),
                status: SeriesStatus::Converged,
                near_pole: true,
            });
        }
        near_pole |= f.log2_abs() < near;
        acc = &acc * &f;
        let lx = x.log2_abs();
        if lx < tol {
            small += 1;
        } else {
            small = 0;
        }
        let tail = lx + geo;
        if small >= policy.consecutive_small && tail < tol {
            return Ok(SeriesResult {
                value: acc,
                terms_used: m + 1,
                tail_estimate: Real::exp2_approx(tail, prec),
                status: SeriesStatus::Converged,
                near_pole,
            });
        }
        x = &x * &qk;
    }
    Ok(SeriesResult {
        value: acc,
        terms_used: policy.max_terms,
        tail_estimate: Real::exp2_approx(x.log2_abs() + geo, prec),
        status: SeriesStatus::Truncated,
        near_pole,
    })
}

/// `(a_1, ..., a_m; q^k)_n`, with `n = None` meaning the infinite product.
pub fn multi_qpoch(
    params: &[HPComplex],
    q: &HPComplex,
    k: u32,
    n: Option<i64>,
    policy: &TruncationPolicy,
) -> Result<SeriesResult> {
    check_base(q)?;
    let mut out = SeriesResult::exact(HPComplex::one(q.prec()), 0);
    for a in params {
        let r = match n {
            Some(n) => SeriesResult::exact(qpoch_finite(a, q, k, n)?, n.unsigned_abs() as usize),
            None => qpoch_infinite(a, q, k, policy)?,
        };
        out = out.times(&r);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::DEFAULT_BITS as P;

    fn c(s: &str) -> HPComplex {
        HPComplex::parse(s, P).unwrap()
    }

    #[test]
    fn small_symbols() {
        assert_eq!(qpoch_finite(&c("0.5"), &c("0.5"), 1, 2).unwrap(), c("0.375"));
        assert_eq!(qpoch_finite(&c("0.25"), &c("0.5"), 1, -1).unwrap(), c("2"));
        assert_eq!(qpoch_finite(&c("0.3"), &c("0.5"), 2, 0).unwrap(), c("1"));
        assert!(qpoch_finite(&c("0.5"), &c("0.5"), 1, -1).unwrap_err().is_pole());
        assert!(qpoch_finite(&c("4"), &c("0.5"), 1, 5).unwrap().is_zero());
    }

    #[test]
    fn euler_function_at_half() {
        let r = qpoch_infinite(&c("0.5"), &c("0.5"), 1, &TruncationPolicy::default()).unwrap();
        // default tolerance stops near 1e-40 relative
        assert!((&r.value - &c("0.2887880950866024212788997219292307800889119048406857841")).log2_abs() < -130.0);
        let tight = TruncationPolicy { tail_tol: 1e-52, ..TruncationPolicy::default() };
        let r = qpoch_infinite(&c("0.5"), &c("0.5"), 1, &tight).unwrap();
        assert_eq!(r.status, SeriesStatus::Converged);
        let expect = c("0.288788095086602421278899721929230780088911904840685784");
        assert!((&r.value - &expect).log2_abs() < -165.0);
    }

    #[test]
    fn rejects_bad_base() {
        assert!(matches!(qpoch_finite(&c("0.5"), &c("1"), 1, 2), Err(Error::Domain(_))));
        assert!(matches!(qpoch_finite(&c("0.5"), &c("0"), 1, 2), Err(Error::Domain(_))));
    }
}
