//! The Rogers-Ramanujan type continued fraction
//!
//! ```text
//! sum q^{n^2} l^n / ((q)_n (-b)_n)
//! ------------------------------------ = 1 + K_{k>=1} (a_k / b_k)
//! sum q^{n^2+n} l^n / ((q)_n (-b)_n)
//! ```
//!
//! and the continued fraction representations of the complete `psi0` and
//! `psi1` built from it.
//!
//! Two readings of the partial quotients are supported. The displayed one
//! has `a_k = l q^k + b`, `b_k = 1 - b`; it equals the series ratio only at
//! `b = 0`. The one that holds for all `b` has `a_k = l q^k` and
//! `b_k = 1 + b q^{k-1}`.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Div, Mul, Sub};

use num_traits::{One, Zero};

use crate::identities::{CheckOptions, IdentityId, ResidualRecord, Sides, Variant};
use crate::mocktheta::{eval_complete, rel_diff, Family, ParameterPoint};
use crate::qcore::{check_base, qpoch_infinite, SeriesResult, SeriesStatus, TruncationPolicy};
use crate::series::TermSpec;
use crate::{Error, HPComplex, Real, Result};

/// Field operations the convergent recurrence needs.
pub trait CfField:
    Clone + Zero + One + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Div<Output = Self>
{
    /// Rough `log2 |x|`; `-inf` for zero.
    fn mag_log2(&self) -> f64;
    /// `x * 2^e`, exactly.
    fn times_pow2(&self, e: i64) -> Self;
}

impl CfField for HPComplex {
    fn mag_log2(&self) -> f64 {
        self.log2_abs()
    }

    fn times_pow2(&self, e: i64) -> Self {
        self.mul_pow2(e)
    }
}

/// `2^332` is just above `10^100`.
const RESCALE_LOG2: f64 = 332.0;

/// Numerator and denominator recurrences of a continued fraction
/// `b0 + n1/(d1 + n2/(d2 + ...))`.
#[derive(Clone, Debug)]
pub struct CfState<T> {
    pub a_prev: T,
    pub a_curr: T,
    pub b_prev: T,
    pub b_curr: T,
    pub depth: usize,
}

impl<T: CfField> CfState<T> {
    pub fn new(b0: T) -> Self {
        CfState { a_prev: T::one(), a_curr: b0, b_prev: T::zero(), b_curr: T::one(), depth: 0 }
    }

    pub fn push(&mut self, n: T, d: T) {
        let a = d.clone() * self.a_curr.clone() + n.clone() * self.a_prev.clone();
        let b = d * self.b_curr.clone() + n * self.b_prev.clone();
        self.a_prev = core::mem::replace(&mut self.a_curr, a);
        self.b_prev = core::mem::replace(&mut self.b_curr, b);
        self.depth += 1;
        let m = self.b_curr.mag_log2();
        if m.is_finite() && m.abs() > RESCALE_LOG2 {
            let s = -(m as i64);
            self.a_prev = self.a_prev.times_pow2(s);
            self.a_curr = self.a_curr.times_pow2(s);
            self.b_prev = self.b_prev.times_pow2(s);
            self.b_curr = self.b_curr.times_pow2(s);
        }
    }

    /// `A_k / B_k`, or `None` when `B_k = 0`.
    pub fn convergent(&self) -> Option<T> {
        if self.b_curr.is_zero() {
            None
        } else {
            Some(self.a_curr.clone() / self.b_curr.clone())
        }
    }
}

/// Bottom-up evaluation of `b0 + n1/(d1 + n2/(d2 + ...))`; `None` on a zero
/// divisor.
pub fn nested<T: CfField>(b0: T, partials: &[(T, T)]) -> Option<T> {
    let mut tail: Option<T> = None;
    for (n, d) in partials.iter().rev() {
        let den = match tail {
            None => d.clone(),
            Some(t) => d.clone() + t,
        };
        if den.is_zero() {
            return None;
        }
        tail = Some(n.clone() / den);
    }
    Some(match tail {
        None => b0,
        Some(t) => b0 + t,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum CfForm {
    /// `a_k = l Q^k + b`, `b_k = 1 - b`.
    #[default]
    AsPrinted,
    /// `a_k = l Q^k`, `b_k = 1 + b Q^{k-1}`.
    Verified,
}

impl CfForm {
    pub fn name(self) -> &'static str {
        match self {
            CfForm::AsPrinted => "as-printed",
            CfForm::Verified => "verified",
        }
    }
}

/// Continued fraction with parameters `lambda`, `beta` over base `Q = q^k`.
#[derive(Clone, Debug)]
pub struct CFSpec {
    pub lambda: HPComplex,
    pub beta: HPComplex,
    pub q: HPComplex,
    pub k: u32,
    pub depth: usize,
    pub form: CfForm,
}

impl CFSpec {
    pub fn new(lambda: HPComplex, beta: HPComplex, q: HPComplex, depth: usize) -> Self {
        CFSpec { lambda, beta, q, k: 1, depth, form: CfForm::AsPrinted }
    }

    fn base(&self) -> Result<HPComplex> {
        check_base(&self.q)?;
        if self.k == 0 {
            return Err(Error::Domain("base exponent k must be positive".into()));
        }
        Ok(self.q.powi(self.k as i64).expect("nonzero base"))
    }

    /// Partial numerators and denominators for levels `1..=depth`.
    pub fn partials(&self, depth: usize) -> Result<Vec<(HPComplex, HPComplex)>> {
        let qq = self.base()?;
        let one = HPComplex::one(self.q.prec());
        let mut out = Vec::with_capacity(depth);
        let mut qk = qq.clone();
        let mut qk1 = one.clone();
        for _ in 0..depth {
            let lq = &self.lambda * &qk;
            out.push(match self.form {
                CfForm::AsPrinted => (&lq + &self.beta, &one - &self.beta),
                CfForm::Verified => (lq, &one + &(&self.beta * &qk1)),
            });
            qk1 = qk.clone();
            qk = &qk * &qq;
        }
        Ok(out)
    }

    /// Convergents `c_0 = 1, c_1, ..., c_depth`.
    pub fn convergents(&self, depth: usize) -> Result<Vec<HPComplex>> {
        let one = HPComplex::one(self.q.prec());
        let mut st = CfState::new(one.clone());
        let mut out = vec![one];
        for (n, d) in self.partials(depth)? {
            st.push(n, d);
            out.push(st.convergent().ok_or_else(|| {
                Error::Pole(format!("convergent denominator B_{} vanishes", st.depth))
            })?);
        }
        Ok(out)
    }
}

#[derive(Clone, Debug)]
pub struct CfValue {
    pub value: HPComplex,
    /// `|c_depth - c_{depth-1}|`.
    pub delta: Real,
    pub depth: usize,
}

pub fn cf_eval(spec: &CFSpec) -> Result<CfValue> {
    if spec.depth == 0 {
        return Err(Error::Domain("continued fraction depth must be at least 1".into()));
    }
    let c = spec.convergents(spec.depth)?;
    let value = c[spec.depth].clone();
    let delta = (&value - &c[spec.depth - 1]).abs();
    Ok(CfValue { value, delta, depth: spec.depth })
}

/// Both series of the ratio and their quotient.
#[derive(Clone, Debug)]
pub struct SeriesRatio {
    pub value: HPComplex,
    pub numer: SeriesResult,
    pub denom: SeriesResult,
}

impl SeriesRatio {
    pub fn status(&self) -> SeriesStatus {
        self.numer.status.worst(self.denom.status)
    }
}

pub fn cf_series_ratio(spec: &CFSpec, policy: &TruncationPolicy) -> Result<SeriesRatio> {
    let qq = spec.base()?;
    let k = spec.k;
    let qh = 2 * k as i64;
    let mb = -&spec.beta;
    let base = TermSpec::new(&spec.q, spec.lambda.clone());
    let numer = base.clone().quad(qh, 0).den(qq.clone(), k).den(mb.clone(), k).sum_unilateral(policy)?;
    let denom = base.quad(qh, qh).den(qq, k).den(mb, k).sum_unilateral(policy)?;
    let value = numer
        .value
        .checked_div(&denom.value)
        .ok_or_else(|| Error::DivisionByZero("denominator series vanishes".into()))?;
    Ok(SeriesRatio { value, numer, denom })
}

const MAX_DEPTH: usize = 200;

/// First depth at which consecutive convergents differ by less than `tol`,
/// capped at 200.
fn stable_depth(c: &[HPComplex], tol: &Real) -> Option<usize> {
    (1..c.len()).find(|&d| (&c[d] - &c[d - 1]).abs() < *tol)
}

/// Residual of the series ratio against the continued fraction. Only
/// `lambda`, `beta`, `q` and `k` of `spec` are used; the depth is chosen
/// adaptively and the form that holds for all `beta` is asserted.
pub fn check_cf_7_1(spec: &CFSpec, opts: &CheckOptions) -> Result<ResidualRecord> {
    let prec = spec.q.prec();
    let ratio = cf_series_ratio(spec, &opts.policy)?;
    let tol = Real::from_f64(opts.assert_tol / 10.0, prec);
    let verified = CFSpec { form: CfForm::Verified, ..spec.clone() };
    let c = verified.convergents(MAX_DEPTH)?;
    let found = stable_depth(&c, &tol);
    let depth = found.unwrap_or(MAX_DEPTH);
    let rhs = SeriesResult {
        value: c[depth].clone(),
        terms_used: depth,
        tail_estimate: (&c[depth] - &c[depth - 1]).abs(),
        status: if found.is_some() { SeriesStatus::Converged } else { SeriesStatus::Truncated },
        near_pole: false,
    };
    let lhs = SeriesResult {
        value: ratio.value.clone(),
        status: ratio.status(),
        ..ratio.numer.clone()
    };
    let mut sides = Sides::new(lhs, rhs);
    sides.notes.push(format!("depth {depth}"));
    sides.notes.push(String::from("partial quotients l q^k / (1 + b q^(k-1))"));
    let printed = CFSpec { form: CfForm::AsPrinted, ..spec.clone() }.convergents(depth);
    match printed {
        Ok(p) => {
            let r = rel_diff(&ratio.value, &p[depth]);
            sides.extras.push((String::from("as_printed_cf"), p[depth].clone()));
            sides.extras.push((String::from("as_printed_rel_residual"), HPComplex::from_real(r)));
        }
        Err(e) => sides.notes.push(format!("as-printed form: {e}")),
    }
    let point = ParameterPoint {
        q: spec.q.clone(),
        z: HPComplex::zero(prec),
        t: HPComplex::zero(prec),
        alpha: Real::zero(prec),
        c1: HPComplex::zero(prec),
        c2: HPComplex::zero(prec),
    };
    let inputs = vec![(String::from("lambda"), spec.lambda.clone()), (String::from("beta"), spec.beta.clone())];
    Ok(ResidualRecord::from_sides(IdentityId::I7_1, None, &point, inputs, sides, opts))
}

/// Prefactors of the two-series decompositions of complete `psi0`
/// (`S`, `T`) and `psi1` (`S1`, `T1`), as quotients of products over `q^2`.
#[derive(Clone, Debug)]
pub struct StPrefactors {
    pub s: HPComplex,
    pub t: HPComplex,
    pub s1: HPComplex,
    pub t1: HPComplex,
}

fn product_quotient(
    q: &HPComplex,
    coef: HPComplex,
    num: &[HPComplex],
    den: &[HPComplex],
    policy: &TruncationPolicy,
) -> Result<HPComplex> {
    let mut v = coef;
    for a in num {
        v = &v * &qpoch_infinite(a, q, 2, policy)?.value;
    }
    for a in den {
        let d = qpoch_infinite(a, q, 2, policy)?.value;
        v = v.checked_div(&d).ok_or_else(|| Error::Pole(format!("denominator product ({a}; q^2)_inf vanishes")))?;
    }
    Ok(v)
}

pub fn st_prefactors(p: &ParameterPoint, policy: &TruncationPolicy) -> Result<StPrefactors> {
    check_base(&p.q)?;
    if p.z.log2_abs() < libm::log2(1e-6) {
        return Err(Error::Pole(format!("|z| = {} is below 1e-6; the 1/z^2 prefactors blow up", p.z.abs())));
    }
    let q = &p.q;
    let pw = |e: i64| q.powi(e).expect("nonzero base");
    let qa = p.q_alpha()?;
    let z2 = p.z.square();
    let z4 = z2.square();
    let cc = &p.c1 * &p.c2;
    if cc.is_zero() {
        return Err(Error::DivisionByZero("c1 c2 = 0".into()));
    }
    let one = HPComplex::one(q.prec());
    let s = product_quotient(
        q,
        -&(&pw(3) / &z2),
        &[pw(2), -&(&(&z4 * &qa) / &(&pw(4) * &cc)), -&(&(&pw(6) * &cc) / &(&qa * &z4)), -&(&pw(2) / &z2)],
        &[-&(&z2 / q), one.clone() / q, &(&z2 * &qa) / &(q * &cc), &(&cc * &pw(3)) / &(&qa * &z2)],
        policy,
    )?;
    let t = product_quotient(
        q,
        -&(&pw(2) / &z2),
        &[pw(2), -&(&(&z2 * &qa) / &(&pw(2) * &cc)), -&(&(&pw(5) * &cc) / &(&qa * &z4)), -&(&pw(3) / &z2)],
        &[z2.clone(), &(&z2 * &qa) / &(q * &cc), &(&cc * &pw(3)) / &(&qa * &z2), q.clone()],
        policy,
    )?;
    let s1 = product_quotient(
        q,
        -&(&pw(2) / &z2),
        &[pw(4), -&(&(&z4 * &qa) / &cc), -&(&(&pw(3) * &cc) / &(&qa * &z4)), -&(q / &z2)],
        &[-&z2, one.clone() / q, -&(&(&(&z2 * &qa) * q) / &cc), &(&cc * q) / &(&qa * &z2)],
        policy,
    )?;
    let t1 = product_quotient(
        q,
        -&(q / &z2),
        &[pw(2), -&(&(&z4 * &qa) / &cc), -&(&(&pw(2) * &cc) / &(&qa * &z4)), -&(&pw(2) / &z2)],
        &[&z2 * q, q.clone(), &(&(&z2 * &qa) * q) / &cc, &(&cc * q) / &(&qa * &z2)],
        policy,
    )?;
    Ok(StPrefactors { s, t, s1, t1 })
}

/// `sum q^{2n^2 + lin n} x^n / ((q^first; q^2)_n (q^2; q^2)_n)`.
fn sigma(q: &HPComplex, x: HPComplex, lin: i64, first: i64, policy: &TruncationPolicy) -> Result<SeriesResult> {
    TermSpec::new(q, x)
        .quad(4, 2 * lin)
        .den(q.powi(first).expect("nonzero base"), 2)
        .den(q.square(), 2)
        .sum_unilateral(policy)
}

/// Continued fraction used on the right of 7.4 / 7.5 in each variant.
fn representation_cf(id: IdentityId, variant: Variant, p: &ParameterPoint, qa: &HPComplex) -> CFSpec {
    let q = p.q.clone();
    let one = HPComplex::one(q.prec());
    let mq = -&q;
    match (id, variant) {
        // numerators q^{2k} - q over 1 + q
        (IdentityId::I7_4, Variant::Printed) => CFSpec { k: 2, ..CFSpec::new(one, mq, q, 0) },
        // numerators q^{1+k+alpha} - q over 1 + q
        (_, Variant::Printed) => CFSpec { k: 1, ..CFSpec::new(qa * &q, mq, q, 0) },
        // q -> q^2, lambda = q^{1+alpha}, beta = -q
        _ => CFSpec { k: 2, ..CFSpec::new(qa * &q, mq, q, 0) },
    }
}

pub fn check_cf_representation(
    id: IdentityId,
    variant: Variant,
    p: &ParameterPoint,
    opts: &CheckOptions,
) -> Result<ResidualRecord> {
    if !matches!(id, IdentityId::I7_4 | IdentityId::I7_5) {
        return Err(Error::Usage(format!("{id} is not a continued fraction representation")));
    }
    let policy = &opts.policy;
    let mut p = p.clone();
    let mut notes = Vec::new();
    if !p.t.is_zero() {
        notes.push(format!("t = {} replaced by 0", p.t));
        p.t = HPComplex::zero(p.prec());
    }
    let q = &p.q;
    let qa = p.q_alpha()?;
    let one = HPComplex::one(q.prec());
    let st = st_prefactors(&p, policy)?;
    let sigma1 = sigma(q, qa.clone(), 3, 3, policy)?;
    let sigma2 = sigma(q, qa.clone(), 1, 1, policy)?;
    let sigma1_plain = sigma(q, one.clone(), 3, 3, policy)?;
    let (family, factor, s_outer, s_inner) = if id == IdentityId::I7_4 {
        (Family::Psi0, &one - q, &st.s, &st.t)
    } else {
        (Family::Psi1, &one + q, &st.t1, &st.s1)
    };
    let f = eval_complete(family, &p, policy)?;

    let div1 = |x: &HPComplex, s: &SeriesResult| {
        x.checked_div(&s.value).ok_or_else(|| Error::DivisionByZero("sigma series vanishes".into()))
    };
    let lhs_value = div1(&(&factor * &f.value), &sigma1)?;
    let lhs = SeriesResult { value: lhs_value, status: f.status.worst(sigma1.status), ..f.clone() };

    let cf_spec = representation_cf(id, variant, &p, &qa);
    let (cf_value, depth, cf_status) = adaptive_cf(&cf_spec, opts)?;
    let rhs_value = s_outer + &(s_inner * &cf_value);
    let rhs = SeriesResult {
        value: rhs_value,
        terms_used: depth,
        tail_estimate: Real::zero(q.prec()),
        status: cf_status,
        near_pole: false,
    };

    let mut sides = Sides::new(lhs, rhs);
    notes.push(String::from("evaluated at t = 0"));
    notes.push(format!("cf depth {depth}"));
    match (id, variant) {
        (IdentityId::I7_4, Variant::Printed) => notes.push(String::from("cf numerators q^(2k) - q over 1 + q")),
        (_, Variant::Printed) => notes.push(String::from("cf numerators q^(1+k+alpha) - q over 1 + q")),
        _ => notes.push(String::from("cf numerators q^(3+alpha+2(k-1)) - q over 1 + q")),
    }
    sides.notes = notes;

    // the ratio that actually appears: sigma2 / sigma1
    sides.extras.push((String::from("sigma1"), sigma1.value.clone()));
    sides.extras.push((String::from("sigma2"), sigma2.value.clone()));
    sides.extras.push((String::from("sigma2_over_sigma1"), div1(&sigma2.value, &sigma1)?));
    sides.extras.push((String::from("cf_value"), cf_value.clone()));
    let verified = CFSpec { k: 2, form: CfForm::Verified, ..CFSpec::new(&qa * q, -q, q.clone(), 0) };
    if let Ok((v, _, _)) = adaptive_cf(&verified, opts) {
        sides.extras.push((String::from("cf_verified_form"), v.clone()));
        sides.extras.push((String::from("rhs_with_verified_cf"), s_outer + &(s_inner * &v)));
    }
    sides.extras.push((String::from("lhs_sigma1_without_n_alpha"), div1(&(&factor * &f.value), &sigma1_plain)?));
    let decomposition = if id == IdentityId::I7_4 {
        &(&st.s * &sigma1.value) + &(&st.t * &sigma2.value)
    } else {
        &(&st.s1 * &sigma1.value) + &(&st.t1 * &sigma2.value)
    };
    sides.extras.push((String::from("decomposition"), decomposition.clone()));
    sides.extras.push((String::from("decomposition_rel_residual"), HPComplex::from_real(rel_diff(&decomposition, &f.value))));

    Ok(ResidualRecord::from_sides(id, Some(variant), &p, Vec::new(), sides, opts))
}

/// Convergent at the first stable depth (capped at 200) and whether it
/// stabilized.
fn adaptive_cf(spec: &CFSpec, opts: &CheckOptions) -> Result<(HPComplex, usize, SeriesStatus)> {
    let tol = Real::from_f64(opts.assert_tol / 10.0, spec.q.prec());
    let c = spec.convergents(MAX_DEPTH)?;
    Ok(match stable_depth(&c, &tol) {
        Some(d) => (c[d].clone(), d, SeriesStatus::Converged),
        None => (c[MAX_DEPTH].clone(), MAX_DEPTH, SeriesStatus::Truncated),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::DEFAULT_BITS as P;
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use num_traits::Signed;

    impl CfField for BigRational {
        fn mag_log2(&self) -> f64 {
            if self.is_zero() {
                return f64::NEG_INFINITY;
            }
            (self.numer().bits() as f64) - (self.denom().bits() as f64)
        }

        fn times_pow2(&self, e: i64) -> Self {
            let p = BigRational::from_integer(BigInt::from(1) << e.unsigned_abs() as usize);
            if e >= 0 {
                self * p
            } else {
                self / p
            }
        }
    }

    fn c(s: &str) -> HPComplex {
        HPComplex::parse(s, P).unwrap()
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn recurrence_equals_nested_exactly_over_rationals() {
        let q = rat(1, 3);
        let (l, b) = (rat(2, 5), rat(3, 7));
        for depth in [1usize, 2, 5, 10] {
            let mut partials = Vec::new();
            let mut qk = q.clone();
            for _ in 0..depth {
                partials.push((&l * &qk + &b, BigRational::one() - &b));
                qk = &qk * &q;
            }
            let mut st = CfState::new(BigRational::one());
            for (n, d) in partials.iter().cloned() {
                st.push(n, d);
            }
            assert_eq!(st.convergent().unwrap(), nested(BigRational::one(), &partials).unwrap());
        }
    }

    #[test]
    fn rescaling_keeps_rational_convergents() {
        let big = rat(1, 1).times_pow2(400);
        let partials = vec![(big.clone(), big.clone()), (rat(3, 1), big.clone()), (rat(-1, 2), rat(5, 1))];
        let mut st = CfState::new(rat(1, 1));
        for (n, d) in partials.iter().cloned() {
            st.push(n, d);
        }
        assert!(st.b_curr.abs().mag_log2() < RESCALE_LOG2);
        assert_eq!(st.convergent().unwrap(), nested(rat(1, 1), &partials).unwrap());
    }

    #[test]
    fn first_convergent_closed_form() {
        let spec = CFSpec::new(c("0.3"), c("0.4"), c("0.2"), 1);
        let v = cf_eval(&spec).unwrap().value;
        let expect = c("1") + (c("0.3") * c("0.2") + c("0.4")) / c("0.6");
        assert!((&v - &expect).log2_abs() < -170.0);
        let zero = CFSpec::new(c("0"), c("0"), c("0.2"), 7);
        assert_eq!(cf_eval(&zero).unwrap().value, c("1"));
    }

    #[test]
    fn rogers_ramanujan_at_beta_zero() {
        let spec = CFSpec::new(c("1"), c("0"), c("0.1"), 50);
        let cf = cf_eval(&spec).unwrap().value;
        let r = cf_series_ratio(&spec, &TruncationPolicy::default()).unwrap().value;
        assert!(rel_diff(&cf, &r) < Real::from_f64(1e-30, P));
    }

    #[test]
    fn verified_form_holds_for_nonzero_beta() {
        let opts = CheckOptions::default();
        for (q, l, b) in [("0.2", "0.3", "0.4"), ("0.5", "1", "0")] {
            let r = check_cf_7_1(&CFSpec::new(c(l), c(b), c(q), 0), &opts).unwrap();
            assert_eq!(r.verdict, crate::identities::Verdict::Pass, "{q} {l} {b}");
        }
    }

    #[test]
    fn pole_of_the_beta_symbol() {
        // -beta = 1/q makes (-beta; q)_2 vanish
        let spec = CFSpec::new(c("0.3"), c("-5"), c("0.2"), 10);
        assert!(check_cf_7_1(&spec, &CheckOptions::default()).unwrap_err().is_pole());
    }

    #[test]
    fn substituted_partials() {
        let (q, alpha) = (c("0.3"), Real::from_i64(1, P));
        let qa = q.pow_real(&alpha).unwrap();
        let spec = CFSpec { k: 2, ..CFSpec::new(&qa * &q, -&q, q.clone(), 0) };
        for (i, (n, d)) in spec.partials(6).unwrap().into_iter().enumerate() {
            let k = i as i64 + 1;
            let expect = &(&q.powi(3 + 2 * (k - 1)).unwrap() * &qa) - &q;
            assert!((&n - &expect).log2_abs() < -165.0);
            assert_eq!(d, &HPComplex::one(P) + &q);
        }
    }
}
