//! The six new mock theta functions in classical, generalized and bilateral form.
//!
//! With `(x)_n = (x; q)_n` the generalized functions are
//!
//! ```text
//! psi0(t,a,z) = 1/(t)_inf sum (t)_n q^{2n^2-3n+na} z^{2n} / (-z^2/q)_{2n}
//! psi1(t,a,z) = 1/(t)_inf sum (t)_n q^{2n^2-n+na}  z^{2n} / (-z^2/q)_{2n+1}
//! psi2(t,a,z) = 1/(t)_inf sum (t)_n q^{2n^2+2n-2na} z^{2n} (z;q^2)_n / ((z^2;q^2)_n (-z^2/q)_{2n})
//! psi3(t,a,z) = 1/(t)_inf sum (t)_n q^{n^2-n+na}  z^{2n} (-z)_n^2 / (-z^2/q)_{2n}
//! phi0(t,a,z) = 1/(t)_inf sum (t)_n q^{n-2na} z^{2n} (-z^2/q)_{2n+1}
//! phi1(t,a,z) = 1/(t)_inf sum (t)_n q^{n-2na} z^{2n} (-z^2/q)_{2n}
//! ```
//!
//! summed over `n >= 0`; the complete (bilateral) forms sum over all integers.

use alloc::format;
use alloc::string::String;

use crate::qcore::{check_base, qpoch_infinite, SeriesResult, TruncationPolicy};
use crate::series::{BilateralResult, TermSpec};
use crate::{Error, HPComplex, Real, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    Psi0,
    Psi1,
    Psi2,
    Psi3,
    Phi0,
    Phi1,
}

impl Family {
    pub const ALL: [Family; 6] = [Family::Psi0, Family::Psi1, Family::Psi2, Family::Psi3, Family::Phi0, Family::Phi1];

    pub fn name(self) -> &'static str {
        match self {
            Family::Psi0 => "psi0",
            Family::Psi1 => "psi1",
            Family::Psi2 => "psi2",
            Family::Psi3 => "psi3",
            Family::Phi0 => "phi0",
            Family::Phi1 => "phi1",
        }
    }

    pub fn parse(s: &str) -> Option<Family> {
        Family::ALL.into_iter().find(|f| f.name() == s)
    }

    /// The `alpha` at which `t = 0, z = q` recovers the classical function.
    pub fn reduction_alpha(self) -> i64 {
        match self {
            Family::Psi3 => -1,
            _ => 1,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Form {
    Classical,
    Generalized,
    Complete,
}

impl Form {
    pub fn name(self) -> &'static str {
        match self {
            Form::Classical => "classical",
            Form::Generalized => "generalized",
            Form::Complete => "complete",
        }
    }

    pub fn parse(s: &str) -> Option<Form> {
        [Form::Classical, Form::Generalized, Form::Complete].into_iter().find(|f| f.name() == s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FunctionId {
    pub family: Family,
    pub form: Form,
}

/// Denominator used for the classical `psi3`: `(q; q)_{2n}` as usually
/// written, or `(-q; q)_{2n}`, which is what the generalized function
/// reduces to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Psi3Denominator {
    #[default]
    AsPrinted,
    NegQ,
}

impl Psi3Denominator {
    pub fn name(self) -> &'static str {
        match self {
            Psi3Denominator::AsPrinted => "as-printed",
            Psi3Denominator::NegQ => "neg-q",
        }
    }
}

/// Evaluation point for the generalized functions and the expansion checks.
#[derive(Clone, Debug, PartialEq)]
pub struct ParameterPoint {
    pub q: HPComplex,
    pub z: HPComplex,
    pub t: HPComplex,
    pub alpha: Real,
    pub c1: HPComplex,
    pub c2: HPComplex,
}

impl ParameterPoint {
    pub fn prec(&self) -> u32 {
        self.q.prec()
    }

    /// `q^alpha` on the principal branch.
    pub fn q_alpha(&self) -> Result<HPComplex> {
        self.q
            .pow_real(&self.alpha)
            .ok_or_else(|| Error::Domain(format!("q^alpha undefined for q = {}", self.q)))
    }
}

/// Summand of a classical function.
pub fn classical_terms(f: Family, q: &HPComplex, psi3: Psi3Denominator) -> TermSpec {
    let p = q.prec();
    let one = HPComplex::one(p);
    let mq = -q;
    let t = TermSpec::new(q, one);
    match f {
        Family::Psi0 => t.quad(4, 0).factor(mq, 1, 2, 0, -1),
        Family::Psi1 => t.quad(4, 4).factor(mq, 1, 2, 1, -1),
        Family::Psi2 => t.quad(4, 4).num(q.clone(), 2).den(q.square(), 2).factor(mq, 1, 2, 0, -1),
        Family::Psi3 => {
            let d = match psi3 {
                Psi3Denominator::AsPrinted => q.clone(),
                Psi3Denominator::NegQ => mq.clone(),
            };
            t.quad(2, 0).factor(mq, 1, 1, 0, 2).factor(d, 1, 2, 0, -1)
        }
        Family::Phi0 => t.quad(0, 2).factor(mq, 1, 2, 1, 1),
        Family::Phi1 => t.quad(0, 2).factor(mq, 1, 2, 0, 1),
    }
}

/// Summand of a generalized function, without the `1/(t)_inf` prefactor.
pub fn generalized_terms(f: Family, p: &ParameterPoint) -> Result<TermSpec> {
    check_base(&p.q)?;
    let q = &p.q;
    let z2 = p.z.square();
    let qa = p.q_alpha()?;
    let w = (-&z2) / q;
    let (ratio, qh, lh) = match f {
        Family::Psi0 => (&z2 * &qa, 4, -6),
        Family::Psi1 => (&z2 * &qa, 4, -2),
        Family::Psi2 => (&z2 / &qa.square(), 4, 4),
        Family::Psi3 => (&z2 * &qa, 2, -2),
        Family::Phi0 | Family::Phi1 => (&z2 / &qa.square(), 0, 2),
    };
    let t = TermSpec::new(q, ratio).quad(qh, lh).num(p.t.clone(), 1);
    Ok(match f {
        Family::Psi0 => t.factor(w, 1, 2, 0, -1),
        Family::Psi1 => t.factor(w, 1, 2, 1, -1),
        Family::Psi2 => t.num(p.z.clone(), 2).den(z2.clone(), 2).factor(w, 1, 2, 0, -1),
        Family::Psi3 => t.factor(-&p.z, 1, 1, 0, 2).factor(w, 1, 2, 0, -1),
        Family::Phi0 => t.factor(w, 1, 2, 1, 1),
        Family::Phi1 => t.factor(w, 1, 2, 0, 1),
    })
}

fn t_prefactor(p: &ParameterPoint, policy: &TruncationPolicy) -> Result<SeriesResult> {
    let r = qpoch_infinite(&p.t, &p.q, 1, policy)?;
    if r.value.is_zero() {
        return Err(Error::Pole(format!("(t; q)_inf vanishes at t = {}", p.t)));
    }
    Ok(SeriesResult { value: r.value.recip().expect("nonzero"), ..r })
}

/// Classical function; `psi3` uses the as-printed denominator.
pub fn eval_classical(f: Family, q: &HPComplex, policy: &TruncationPolicy) -> Result<SeriesResult> {
    eval_classical_with(f, q, Psi3Denominator::AsPrinted, policy)
}

pub fn eval_classical_with(
    f: Family,
    q: &HPComplex,
    psi3: Psi3Denominator,
    policy: &TruncationPolicy,
) -> Result<SeriesResult> {
    check_base(q)?;
    classical_terms(f, q, psi3).sum_unilateral(policy)
}

pub fn eval_generalized(f: Family, p: &ParameterPoint, policy: &TruncationPolicy) -> Result<SeriesResult> {
    let pre = t_prefactor(p, policy)?;
    let s = generalized_terms(f, p)?.sum_unilateral(policy)?;
    Ok(s.times(&pre))
}

/// Bilateral sum with the `1/(t)_inf` prefactor applied to each half.
pub fn eval_complete_parts(f: Family, p: &ParameterPoint, policy: &TruncationPolicy) -> Result<BilateralResult> {
    if p.z.is_zero() {
        return Err(Error::Pole("z = 0 gives negative powers of zero".into()));
    }
    let pre = t_prefactor(p, policy)?;
    let b = generalized_terms(f, p)?.sum_bilateral(policy)?;
    Ok(BilateralResult { positive: b.positive.times(&pre), negative: b.negative.times(&pre), total: b.total.times(&pre) })
}

pub fn eval_complete(f: Family, p: &ParameterPoint, policy: &TruncationPolicy) -> Result<SeriesResult> {
    Ok(eval_complete_parts(f, p, policy)?.total)
}

pub fn eval(id: FunctionId, p: &ParameterPoint, psi3: Psi3Denominator, policy: &TruncationPolicy) -> Result<SeriesResult> {
    match id.form {
        Form::Classical => eval_classical_with(id.family, &p.q, psi3, policy),
        Form::Generalized => eval_generalized(id.family, p, policy),
        Form::Complete => eval_complete(id.family, p, policy),
    }
}

/// Generalized function at its reduction point next to the classical value.
#[derive(Clone, Debug)]
pub struct Reduction {
    pub family: Family,
    pub generalized: HPComplex,
    pub classical: HPComplex,
    pub rel_diff: Real,
}

pub fn rel_diff(a: &HPComplex, b: &HPComplex) -> Real {
    let prec = a.prec().max(b.prec());
    let floor = Real::parse("1e-30", prec).unwrap();
    let den = a.abs().max(b.abs()).max(floor);
    (a - b).abs() / den
}

/// Compares `f(0, alpha_f, q; q)` with the classical `f(q)`.
pub fn reduction(f: Family, q: &HPComplex, psi3: Psi3Denominator, policy: &TruncationPolicy) -> Result<Reduction> {
    let prec = q.prec();
    let p = ParameterPoint {
        q: q.clone(),
        z: q.clone(),
        t: HPComplex::zero(prec),
        alpha: Real::from_i64(f.reduction_alpha(), prec),
        c1: HPComplex::zero(prec),
        c2: HPComplex::zero(prec),
    };
    let generalized = eval_generalized(f, &p, policy)?.value;
    let classical = eval_classical_with(f, q, psi3, policy)?.value;
    let rel_diff = rel_diff(&generalized, &classical);
    Ok(Reduction { family: f, generalized, classical, rel_diff })
}

/// Which classical `psi3` denominator the generalized function reduces to.
#[derive(Clone, Debug)]
pub struct Psi3Report {
    pub as_printed: Reduction,
    pub neg_q: Reduction,
    pub matching: Option<Psi3Denominator>,
}

pub fn psi3_report(q: &HPComplex, tol: &Real, policy: &TruncationPolicy) -> Result<Psi3Report> {
    let as_printed = reduction(Family::Psi3, q, Psi3Denominator::AsPrinted, policy)?;
    let neg_q = reduction(Family::Psi3, q, Psi3Denominator::NegQ, policy)?;
    let matching = if &neg_q.rel_diff <= tol {
        Some(Psi3Denominator::NegQ)
    } else if &as_printed.rel_diff <= tol {
        Some(Psi3Denominator::AsPrinted)
    } else {
        None
    };
    Ok(Psi3Report { as_printed, neg_q, matching })
}

impl Psi3Report {
    pub fn summary(&self) -> String {
        format!(
            "psi3 reduction: (q;q)_2n rel diff {:.3}, (-q;q)_2n rel diff {:.3}, match {}",
            self.as_printed.rel_diff,
            self.neg_q.rel_diff,
            self.matching.map(|m| m.name()).unwrap_or("none")
        )
    }
}
