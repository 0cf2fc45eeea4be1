//! Basic hypergeometric series `A phi A-1` and the bilateral series `2 psi 2`.

use alloc::format;
use alloc::vec::Vec;

use crate::qcore::{check_base, SeriesResult, TruncationPolicy};
use crate::series::{BilateralResult, TermSpec};
use crate::{Error, HPComplex, Real, Result};

/// A series parameter. `Infinite` stands for the limit `a -> inf` taken
/// together with `z -> 0` so that `a z` stays fixed: the argument passed
/// with it is already the rescaled one, and each such slot contributes
/// `(-1)^n q^{k n(n-1)/2}` to the `n`-th term.
#[derive(Clone, Debug, PartialEq)]
pub enum Param {
    Finite(HPComplex),
    Infinite,
}

impl Param {
    pub fn finite(&self) -> Option<&HPComplex> {
        match self {
            Param::Finite(a) => Some(a),
            Param::Infinite => None,
        }
    }

    /// `s * a`; infinity stays infinite.
    pub fn scaled(&self, s: &HPComplex) -> Param {
        match self {
            Param::Finite(a) => Param::Finite(a * s),
            Param::Infinite => Param::Infinite,
        }
    }
}

impl From<HPComplex> for Param {
    fn from(a: HPComplex) -> Self {
        Param::Finite(a)
    }
}

/// `sum_{n>=0} prod (a_i; q^k)_n / (prod (b_j; q^k)_n (q^k; q^k)_n) z^n`.
#[derive(Clone, Debug)]
pub struct PhiSpec {
    pub numer: Vec<Param>,
    pub denom: Vec<HPComplex>,
    pub q: HPComplex,
    pub k: u32,
    pub z: HPComplex,
}

/// `sum_{n in Z} (a1, a2; q^k)_n / (b1, b2; q^k)_n z^n`.
#[derive(Clone, Debug)]
pub struct Psi2Spec {
    pub a: [Param; 2],
    pub b: [HPComplex; 2],
    pub q: HPComplex,
    pub k: u32,
    pub z: HPComplex,
}

fn with_params(mut t: TermSpec, numer: &[Param], k: u32) -> TermSpec {
    let mut infinite = 0i64;
    for a in numer {
        match a {
            Param::Finite(a) => t = t.num(a.clone(), k),
            Param::Infinite => infinite += 1,
        }
    }
    if infinite % 2 == 1 {
        t.ratio = -t.ratio;
    }
    t.quad(infinite * k as i64, -infinite * k as i64)
}

impl PhiSpec {
    pub fn terms(&self) -> Result<TermSpec> {
        check_base(&self.q)?;
        if self.k == 0 {
            return Err(Error::Domain("base exponent k must be positive".into()));
        }
        if self.denom.len() + 1 != self.numer.len() {
            return Err(Error::Domain(format!(
                "{} numerator and {} denominator parameters; expected one more numerator",
                self.numer.len(),
                self.denom.len()
            )));
        }
        let qk = self.q.powi(self.k as i64).expect("nonzero base");
        let mut t = with_params(TermSpec::new(&self.q, self.z.clone()), &self.numer, self.k);
        for b in &self.denom {
            t = t.den(b.clone(), self.k);
        }
        Ok(t.den(qk, self.k))
    }
}

impl Psi2Spec {
    pub fn terms(&self) -> Result<TermSpec> {
        check_base(&self.q)?;
        if self.k == 0 {
            return Err(Error::Domain("base exponent k must be positive".into()));
        }
        let t = with_params(TermSpec::new(&self.q, self.z.clone()), &self.a, self.k);
        Ok(t.den(self.b[0].clone(), self.k).den(self.b[1].clone(), self.k))
    }

    /// Checks `|b1 b2 / (a1 a2)| < |z| < 1`, in rescaled form for infinite slots.
    pub fn check_annulus(&self) -> Result<()> {
        let prec = self.z.prec();
        let one = Real::one(prec);
        let mut fin = HPComplex::one(prec);
        let mut any_infinite = false;
        for a in &self.a {
            match a {
                Param::Finite(a) => fin = &fin * a,
                Param::Infinite => any_infinite = true,
            }
        }
        let lower = (&self.b[0] * &self.b[1]).norm_sqr();
        let scaled = (&self.z * &fin).norm_sqr();
        if lower >= scaled {
            return Err(Error::AnnulusViolation(format!(
                "|b1 b2| = {} is not below |a1 a2 z| = {}",
                lower.sqrt().unwrap(),
                scaled.sqrt().unwrap()
            )));
        }
        if !any_infinite && self.z.norm_sqr() >= one {
            return Err(Error::AnnulusViolation(format!("|z| = {} is not below 1", self.z.abs())));
        }
        Ok(())
    }
}

/// Sum of an `A phi A-1` series. `|z| < 1` is required unless some numerator
/// parameter is infinite, in which case the series is entire in `z`.
pub fn phi_eval(spec: &PhiSpec, policy: &TruncationPolicy) -> Result<SeriesResult> {
    let t = spec.terms()?;
    let entire = spec.numer.iter().any(|a| *a == Param::Infinite);
    if !entire && spec.z.norm_sqr() >= Real::one(spec.z.prec()) {
        return Err(Error::Domain(format!("|z| = {} is not below 1", spec.z.abs())));
    }
    t.sum_unilateral(policy)
}

/// Both halves of a `2 psi 2` series.
pub fn psi2_parts(spec: &Psi2Spec, policy: &TruncationPolicy) -> Result<BilateralResult> {
    spec.check_annulus()?;
    spec.terms()?.sum_bilateral(policy)
}

/// Sum of a `2 psi 2` series inside its annulus of convergence.
pub fn psi2_eval(spec: &Psi2Spec, policy: &TruncationPolicy) -> Result<SeriesResult> {
    Ok(psi2_parts(spec, policy)?.total)
}
