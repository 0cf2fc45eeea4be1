//! Term-by-term summation of unilateral and bilateral q-series.
//!
//! A [`TermSpec`] describes summands of the shape
//!
//! ```text
//! C^n * q^{(A n^2 + B n)/2} * prod_i (a_i; q^{k_i})_{s_i n + o_i}^{e_i}
//! ```
//!
//! which covers every series in this crate. Consecutive terms are produced
//! by multiplying in the ratio, so the cost per term is a handful of
//! multiplications; exact zeros and poles of the Pochhammer factors are
//! tracked so that terminating series stop and genuine poles are reported.

use alloc::format;
use alloc::vec::Vec;

use crate::qcore::{check_base, qpoch_value, PochValue, QPowers, SeriesResult, SeriesStatus, TruncationPolicy};
use crate::{Error, HPComplex, Real, Result};

#[derive(Clone, Debug)]
pub struct PochFactor {
    pub a: HPComplex,
    /// Pochhammer base is `q^k`.
    pub k: u32,
    /// Index is `scale * n + offset`.
    pub scale: i64,
    pub offset: i64,
    /// Exponent applied to the symbol; negative values divide.
    pub power: i32,
}

#[derive(Clone, Debug)]
pub struct TermSpec {
    pub q: HPComplex,
    pub ratio: HPComplex,
    pub quad_half: i64,
    pub lin_half: i64,
    pub factors: Vec<PochFactor>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Up,
    Down,
}

/// Both halves of a bilateral sum and their combination.
#[derive(Clone, Debug)]
pub struct BilateralResult {
    /// `n >= 0`.
    pub positive: SeriesResult,
    /// `n < 0`.
    pub negative: SeriesResult,
    pub total: SeriesResult,
}

impl TermSpec {
    pub fn new(q: &HPComplex, ratio: HPComplex) -> Self {
        TermSpec { q: q.clone(), ratio, quad_half: 0, lin_half: 0, factors: Vec::new() }
    }

    /// Adds `q^{(qh n^2 + lh n)/2}` to the summand.
    pub fn quad(mut self, qh: i64, lh: i64) -> Self {
        self.quad_half += qh;
        self.lin_half += lh;
        self
    }

    /// Adds `(a; q^k)_{scale n + offset}^power` to the summand.
    pub fn factor(mut self, a: HPComplex, k: u32, scale: i64, offset: i64, power: i32) -> Self {
        if !a.is_zero() {
            self.factors.push(PochFactor { a, k, scale, offset, power });
        }
        self
    }

    pub fn num(self, a: HPComplex, k: u32) -> Self {
        self.factor(a, k, 1, 0, 1)
    }

    pub fn den(self, a: HPComplex, k: u32) -> Self {
        self.factor(a, k, 1, 0, -1)
    }

    pub fn exponent(&self, n: i64) -> i64 {
        (self.quad_half * n * n + self.lin_half * n) / 2
    }

    fn validate(&self) -> Result<()> {
        check_base(&self.q)?;
        if (self.quad_half + self.lin_half) % 2 != 0 {
            return Err(Error::Domain("quadratic exponent is not integral".into()));
        }
        if self.factors.iter().any(|f| f.k == 0 || f.scale < 1) {
            return Err(Error::Domain("factor base and scale must be positive".into()));
        }
        Ok(())
    }

    /// The `n`-th summand computed from scratch, without recurrences.
    pub fn term_direct(&self, n: i64) -> Result<HPComplex> {
        self.validate()?;
        let prec = self.q.prec();
        let cn = self
            .ratio
            .powi(n)
            .ok_or_else(|| Error::Pole(format!("zero series argument at n = {n}")))?;
        let qe = self.q.powi(self.exponent(n)).expect("nonzero base");
        let mut pw = QPowers::new(&self.q);
        let mut num = &cn * &qe;
        let mut den = HPComplex::one(prec);
        for f in &self.factors {
            let v = match qpoch_value(&f.a, f.k, f.scale * n + f.offset, &mut pw) {
                PochValue::Finite(v) => v,
                PochValue::Zero if f.power > 0 => return Ok(HPComplex::zero(prec)),
                PochValue::Pole if f.power < 0 => return Ok(HPComplex::zero(prec)),
                PochValue::Zero => return Err(Error::Pole(format!("denominator vanishes at n = {n}"))),
                PochValue::Pole => return Err(Error::Pole(format!("numerator has a pole at n = {n}"))),
            };
            for _ in 0..f.power.unsigned_abs() {
                if f.power > 0 {
                    num = &num * &v;
                } else {
                    den = &den * &v;
                }
            }
        }
        Ok(num / den)
    }

    /// Sum over `n >= 0`.
    pub fn sum_unilateral(&self, policy: &TruncationPolicy) -> Result<SeriesResult> {
        self.sum_side(Direction::Up, policy, f64::NEG_INFINITY)
    }

    /// Sum over all integers `n`.
    pub fn sum_bilateral(&self, policy: &TruncationPolicy) -> Result<BilateralResult> {
        let positive = self.sum_side(Direction::Up, policy, f64::NEG_INFINITY)?;
        let negative = self.sum_side(Direction::Down, policy, positive.value.log2_abs())?;
        let total = combine(&positive, &negative);
        Ok(BilateralResult { positive, negative, total })
    }

    /// Sum over `n >= 0` (`Up`) or `n <= -1` (`Down`). `ref_log2` is the
    /// magnitude of anything the result will be added to, used for the
    /// relative stopping test.
    pub fn sum_side(&self, dir: Direction, policy: &TruncationPolicy, ref_log2: f64) -> Result<SeriesResult> {
        self.validate()?;
        policy.validate()?;
        let prec = self.q.prec();
        let tol = policy.log2_tol();
        let mut w = Walker::new(self, policy);
        if dir == Direction::Down {
            w.step(dir)?;
        }
        let mut sum = HPComplex::zero(prec);
        let mut small = 0usize;
        let mut growing = 0usize;
        let mut prev = f64::NEG_INFINITY;
        for count in 1..=policy.max_terms {
            let t = match w.current(dir)? {
                Term::Value(t) => t,
                Term::Zero { terminal: true } => {
                    return Ok(SeriesResult {
                        value: sum,
                        terms_used: count - 1,
                        tail_estimate: Real::zero(prec),
                        status: SeriesStatus::Converged,
                        near_pole: w.near_pole,
                    })
                }
                Term::Zero { terminal: false } => HPComplex::zero(prec),
            };
            sum = &sum + &t;
            let lt = t.log2_abs();
            let ls = sum.log2_abs().max(ref_log2);
            let lr = if lt.is_finite() && prev.is_finite() { Some(lt - prev) } else { None };
            prev = lt;
            growing = if lr.is_some_and(|r| r > 0.0) { growing + 1 } else { 0 };
            if growing >= 30 {
                return Ok(truncated(sum, count, lt - ls, w.near_pole));
            }
            if lt <= ls + tol {
                small += 1;
            } else {
                small = 0;
            }
            if small >= policy.consecutive_small {
                let tail = match lr {
                    _ if lt == f64::NEG_INFINITY => Some(f64::NEG_INFINITY),
                    Some(r) if r < libm::log2(0.9) => Some(lt + r - libm::log2(1.0 - libm::exp2(r)) - ls),
                    Some(_) => None,
                    None => Some(lt - ls),
                };
                if let Some(tail) = tail.filter(|&t| t < tol) {
                    return Ok(SeriesResult {
                        value: sum,
                        terms_used: count,
                        tail_estimate: Real::exp2_approx(tail, prec),
                        status: SeriesStatus::Converged,
                        near_pole: w.near_pole,
                    });
                }
            }
            if count < policy.max_terms {
                w.step(dir)?;
            }
        }
        let ls = sum.log2_abs().max(ref_log2);
        Ok(truncated(sum, policy.max_terms, prev - ls, w.near_pole))
    }
}

fn truncated(value: HPComplex, terms_used: usize, rel_log2: f64, near_pole: bool) -> SeriesResult {
    let prec = value.prec();
    SeriesResult {
        value,
        terms_used,
        tail_estimate: Real::exp2_approx(rel_log2.min(1e6), prec),
        status: SeriesStatus::Truncated,
        near_pole,
    }
}

/// Adds two partial sums, rescaling their relative tail estimates.
pub fn combine(a: &SeriesResult, b: &SeriesResult) -> SeriesResult {
    let value = &a.value + &b.value;
    let prec = value.prec();
    let la = a.tail_estimate.log2_abs() + a.value.log2_abs();
    let lb = b.tail_estimate.log2_abs() + b.value.log2_abs().max(a.value.log2_abs());
    let lv = value.log2_abs();
    let abs_tail = if la >= lb { la + libm::log2(1.0 + libm::exp2(lb - la)) } else { lb + libm::log2(1.0 + libm::exp2(la - lb)) };
    let rel = if abs_tail == f64::NEG_INFINITY || abs_tail.is_nan() { f64::NEG_INFINITY } else { abs_tail - lv };
    SeriesResult {
        value,
        terms_used: a.terms_used + b.terms_used,
        tail_estimate: Real::exp2_approx(rel.min(1e6), prec),
        status: a.status.worst(b.status),
        near_pole: a.near_pole || b.near_pole,
    }
}

enum Term {
    Value(HPComplex),
    /// The summand vanishes; `terminal` if every later one in this direction does too.
    Zero { terminal: bool },
}

struct Cursor {
    a: HPComplex,
    k: i64,
    scale: i64,
    power: i32,
    idx: i64,
    state: PochValue,
}

struct Walker<'a> {
    spec: &'a TermSpec,
    pw: QPowers,
    n: i64,
    base: HPComplex,
    cursors: Vec<Cursor>,
    near_log2: f64,
    near_pole: bool,
}

impl<'a> Walker<'a> {
    fn new(spec: &'a TermSpec, policy: &TruncationPolicy) -> Self {
        let mut pw = QPowers::new(&spec.q);
        let cursors = spec
            .factors
            .iter()
            .map(|f| Cursor {
                a: f.a.clone(),
                k: f.k as i64,
                scale: f.scale,
                power: f.power,
                idx: f.offset,
                state: qpoch_value(&f.a, f.k, f.offset, &mut pw),
            })
            .collect();
        Walker {
            spec,
            pw,
            n: 0,
            base: HPComplex::one(spec.q.prec()),
            cursors,
            near_log2: libm::log2(policy.near_pole_tol),
            near_pole: false,
        }
    }

    fn current(&self, dir: Direction) -> Result<Term> {
        let mut num = self.base.clone();
        let mut den: Option<HPComplex> = None;
        let mut zero = None;
        for c in &self.cursors {
            match (&c.state, c.power > 0) {
                (PochValue::Finite(v), up) => {
                    for _ in 0..c.power.unsigned_abs() {
                        if up {
                            num = &num * v;
                        } else {
                            den = Some(match den {
                                Some(d) => &d * v,
                                None => v.clone(),
                            });
                        }
                    }
                }
                (PochValue::Zero, true) => zero = Some(zero.unwrap_or(false) || dir == Direction::Up),
                (PochValue::Pole, false) => zero = Some(zero.unwrap_or(false) || dir == Direction::Down),
                (PochValue::Zero, false) => {
                    return Err(Error::Pole(format!("denominator vanishes at n = {}", self.n)));
                }
                (PochValue::Pole, true) => {
                    return Err(Error::Pole(format!("numerator has a pole at n = {}", self.n)));
                }
            }
        }
        if let Some(terminal) = zero {
            return Ok(Term::Zero { terminal });
        }
        Ok(Term::Value(match den {
            Some(d) => num / d,
            None => num,
        }))
    }

    fn step(&mut self, dir: Direction) -> Result<()> {
        let n = self.n;
        let spec = self.spec;
        let prec = spec.q.prec();
        let one = HPComplex::one(prec);
        match dir {
            Direction::Up => {
                let d = spec.exponent(n + 1) - spec.exponent(n);
                let f = &spec.ratio * &self.pw.pow(d);
                self.base = &self.base * &f;
                self.n += 1;
            }
            Direction::Down => {
                let d = spec.exponent(n) - spec.exponent(n - 1);
                let f = &spec.ratio * &self.pw.pow(d);
                if f.is_zero() {
                    return Err(Error::Pole("zero series argument on the negative side".into()));
                }
                self.base = &self.base / &f;
                self.n -= 1;
            }
        }
        for c in &mut self.cursors {
            let mut recompute = false;
            let range: Vec<i64> = match dir {
                Direction::Up => (c.idx..c.idx + c.scale).collect(),
                Direction::Down => (c.idx - c.scale..c.idx).rev().collect(),
            };
            for j in range {
                let f = &one - &self.pw.shift(&c.a, c.k * j);
                if f.log2_abs() < self.near_log2 {
                    self.near_pole = true;
                }
                c.state = match (core::mem::replace(&mut c.state, PochValue::Zero), dir) {
                    (PochValue::Finite(v), Direction::Up) => {
                        if f.is_zero() {
                            PochValue::Zero
                        } else {
                            PochValue::Finite(&v * &f)
                        }
                    }
                    (PochValue::Finite(v), Direction::Down) => {
                        if f.is_zero() {
                            if j < 0 {
                                PochValue::Pole
                            } else {
                                recompute = true;
                                PochValue::Zero
                            }
                        } else {
                            PochValue::Finite(&v / &f)
                        }
                    }
                    (PochValue::Zero, Direction::Up) => PochValue::Zero,
                    (PochValue::Pole, Direction::Down) => PochValue::Pole,
                    (s, _) => {
                        recompute = true;
                        s
                    }
                };
            }
            c.idx += match dir {
                Direction::Up => c.scale,
                Direction::Down => -c.scale,
            };
            if recompute {
                c.state = qpoch_value(&c.a, c.k as u32, c.idx, &mut self.pw);
            }
        }
        Ok(())
    }
}
