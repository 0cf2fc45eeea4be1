//! Complete `psi0, psi1, phi0, phi1` as sums of two bilateral series
//! (identities 4.2 to 4.5), obtained from the `(c1, c2)` expansion with
//! `q -> q^2` and all products over base `q^2`.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::slater::{slater_4_1, Sides};
use super::{div, scale, sum_with_idem, CheckOptions, IdentityId, Products, ResidualRecord, Variant};
use crate::mocktheta::{eval_complete, Family, ParameterPoint};
use crate::qcore::{SeriesResult, TruncationPolicy};
use crate::series::TermSpec;
use crate::{Error, HPComplex, Result};

/// Shared quantities at a point, with `t` forced to zero.
pub(crate) struct Env<'a> {
    pub p: ParameterPoint,
    pub q: HPComplex,
    pub qq: HPComplex,
    pub z2: HPComplex,
    pub qa: HPComplex,
    pub policy: &'a TruncationPolicy,
    pub notes: Vec<String>,
}

impl<'a> Env<'a> {
    pub fn new(p: &ParameterPoint, policy: &'a TruncationPolicy) -> Result<Self> {
        let mut notes = Vec::new();
        let mut p = p.clone();
        if !p.t.is_zero() {
            notes.push(alloc::format!("t = {} replaced by 0", p.t));
            p.t = HPComplex::zero(p.prec());
        }
        if p.z.is_zero() {
            return Err(Error::Pole("z = 0 gives negative powers of zero".into()));
        }
        let qa = p.q_alpha()?;
        Ok(Env { q: p.q.clone(), qq: p.q.square(), z2: p.z.square(), qa, policy, notes, p })
    }

    pub fn qp(&self, e: i64) -> HPComplex {
        self.q.powi(e).expect("nonzero base")
    }

    pub fn pr(&self) -> Products<'_> {
        Products { q: &self.q, k: 2, policy: self.policy }
    }

    pub fn complete(&self, f: Family) -> Result<SeriesResult> {
        eval_complete(f, &self.p, self.policy)
    }

    /// `1 + z^2/q`, the factor relating `(-z^2/q; q)_{2n+1}` to `(-z^2; q)_{2n}`.
    pub fn one_plus(&self) -> HPComplex {
        &HPComplex::one(self.q.prec()) + &(&self.z2 / &self.q)
    }

    /// `(c1, c2, Q/c1, Q/c2)`.
    pub fn den_c(&self) -> Result<[(&'static str, HPComplex); 4]> {
        let (c1, c2) = (&self.p.c1, &self.p.c2);
        Ok([
            ("c1", c1.clone()),
            ("c2", c2.clone()),
            ("Q/c1", div(&self.qq, c1, "c1")?),
            ("Q/c2", div(&self.qq, c2, "c2")?),
        ])
    }

    /// `(c1, Q/c1, c1/c2, Q c2/c1)` with `x, y` standing for `c1, c2`.
    pub fn den_t(&self, x: &HPComplex, y: &HPComplex) -> [(&'static str, HPComplex); 4] {
        let s = &self.qq / x;
        [("c1", x.clone()), ("Q/c1", s.clone()), ("c1/c2", x / y), ("Qc2/c1", y * &s)]
    }
}

/// One side-term: `coef * num / den * series`.
pub(crate) struct Term {
    pub coef: HPComplex,
    pub num: Vec<(&'static str, HPComplex)>,
    pub den: Vec<(&'static str, HPComplex)>,
    pub series: TermSpec,
    pub bilateral: bool,
}

impl Term {
    pub fn eval(self, e: &Env) -> Result<SeriesResult> {
        let pre = e.pr().ratio(&self.num, &self.den)?;
        let s = if self.bilateral {
            self.series.sum_bilateral(e.policy)?.total
        } else {
            self.series.sum_unilateral(e.policy)?
        };
        Ok(scale(pre.times(&s), &self.coef))
    }
}

fn neg(x: HPComplex) -> HPComplex {
    -x
}

fn derived(id: IdentityId, e: &Env) -> Result<Sides> {
    let (q, qq, z2, qa) = (&e.q, &e.qq, &e.z2, &e.qa);
    let (c1, c2) = (&e.p.c1, &e.p.c2);
    let cc = c1 * c2;
    let one = HPComplex::one(q.prec());
    let z6 = &z2.square() * z2;
    let qa2 = qa.square();
    let (lnum, conv, family) = match id {
        IdentityId::I4_2 | IdentityId::I4_3 => {
            let (b, zz) = if id == IdentityId::I4_2 {
                ([neg(z2 / q), neg(z2.clone())], &(z2 * qa) / q)
            } else {
                ([neg(z2.clone()), neg(z2 * q)], &(z2 * qa) * q)
            };
            let d = div(&zz, &cc, "c1 c2")?;
            let num = vec![("b1", b[0].clone()), ("b2", b[1].clone()), ("dZ", d.clone()), ("Q/dZ", qq / &d)];
            if id == IdentityId::I4_2 {
                (num, one.clone(), Family::Psi0)
            } else {
                (num, e.one_plus(), Family::Psi1)
            }
        }
        _ => {
            let (na, dw) = if id == IdentityId::I4_4 {
                ([neg(qq / z2), neg(q / z2)], &(&z6 * qq) / &(&qa2 * &cc))
            } else {
                ([neg(&e.qp(3) / z2), neg(qq / z2)], &z6 / &(&qa2 * &cc))
            };
            let num = vec![("Q/a1", na[0].clone()), ("Q/a2", na[1].clone()), ("dw", dw.clone()), ("Q/dw", qq / &dw)];
            if id == IdentityId::I4_4 {
                (num, e.one_plus().recip().ok_or_else(|| Error::Pole("1 + z^2/q = 0".into()))?, Family::Phi0)
            } else {
                (num, one.clone(), Family::Phi1)
            }
        }
    };
    let lhs = e.pr().ratio(&lnum, &e.den_c()?)?.times(&e.complete(family)?);
    let lhs = scale(lhs, &conv);

    let term = |x: &HPComplex, y: &HPComplex| -> Result<SeriesResult> {
        let s = qq / x;
        let t = match id {
            IdentityId::I4_2 | IdentityId::I4_3 => {
                let (zz, b1, lh) = if id == IdentityId::I4_2 {
                    (&(z2 * qa) / q, neg(&(z2 * q) / x), 2)
                } else {
                    (&(z2 * qa) * q, neg(&(z2 * qq) / x), 6)
                };
                let b2 = &b1 * q;
                let dzx = &zz / &(y * qq);
                let num = vec![("Qb1/c1", b1.clone()), ("Qb2/c1", b2.clone()), ("dc1Z/Q", dzx.clone()), ("Q/(dc1Z/Q)", qq / &dzx)];
                let series = TermSpec::new(q, &(qa * z2) / &x.square()).quad(4, lh).den(b1, 2).den(b2, 2);
                Term { coef: s, num, den: e.den_t(x, y).to_vec(), series, bilateral: true }
            }
            _ => {
                let (xa, a1) = if id == IdentityId::I4_4 {
                    ([neg(x / z2), neg(&(x / z2) / q)], neg(&(z2 * qq) / x))
                } else {
                    ([neg(&(x * q) / z2), neg(x / z2)], neg(&(z2 * q) / x))
                };
                let dwx = if id == IdentityId::I4_4 { &z6 / &(&qa2 * y) } else { &z6 / &(&(&qa2 * qq) * y) };
                let num = vec![("c1/a1", xa[0].clone()), ("c1/a2", xa[1].clone()), ("dwc1/Q", dwx.clone()), ("Q/(dwc1/Q)", qq / &dwx)];
                let w = &(z2 * q) / &qa2;
                let series = TermSpec::new(q, w).num(a1.clone(), 2).num(&a1 * q, 2);
                Term { coef: s, num, den: e.den_t(x, y).to_vec(), series, bilateral: true }
            }
        };
        t.eval(e)
    };
    let rhs = sum_with_idem(term, c1, c2)?;
    Ok(Sides::new(lhs, rhs))
}

fn printed(id: IdentityId, e: &Env) -> Result<Sides> {
    let (q, qq, z2, qa) = (&e.q, &e.qq, &e.z2, &e.qa);
    let (c1, c2) = (&e.p.c1, &e.p.c2);
    let cc = c1 * c2;
    let z4 = z2.square();
    let z6 = &z4 * z2;
    let qa2 = qa.square();
    let mut notes = Vec::new();
    let (lnum, family) = match id {
        IdentityId::I4_2 => (
            vec![
                ("-z^2/q", neg(z2 / q)),
                ("-z^2", neg(z2.clone())),
                ("z^2q^(a-1)/(c1c2)", &(z2 * qa) / &(q * &cc)),
                ("c1c2/(z^2q^(a-3))", &(&cc * &e.qp(3)) / &(z2 * qa)),
            ],
            Family::Psi0,
        ),
        IdentityId::I4_3 => (
            vec![
                ("-z^2", neg(z2.clone())),
                ("-z^2q", neg(z2 * q)),
                ("z^2q^2/(c1c2)", &(z2 * qq) / &cc),
                ("c1c2/z^2", &cc / z2),
            ],
            Family::Psi1,
        ),
        IdentityId::I4_4 => (
            vec![
                ("-q^2/z^2", neg(qq / z2)),
                ("-q/z^2", neg(q / z2)),
                ("z^6q^(2-2a)/(c1c2)", &(&z6 * qq) / &(&qa2 * &cc)),
                ("c1c2q^(2a)/z^4", &(&cc * &qa2) / &z4),
            ],
            Family::Phi0,
        ),
        _ => (
            vec![
                ("-q^3/z", neg(&e.qp(3) / &e.p.z)),
                ("-q^2/z^2", neg(qq / z2)),
                ("z^6/(c1c2q^(2a))", &z6 / &(&cc * &qa2)),
                ("c1c2q^(2+2a)/z^6", &(&(&cc * qq) * &qa2) / &z6),
            ],
            Family::Phi1,
        ),
    };
    let lhs = e.pr().ratio(&lnum, &e.den_c()?)?.times(&e.complete(family)?);
    match id {
        IdentityId::I4_2 | IdentityId::I4_3 => notes.push(String::from("1/c1^(2n) placed inside the summand")),
        _ => {}
    }
    if id == IdentityId::I4_3 {
        notes.push(String::from("constant q^alpha of the summand exponent taken outside the sum"));
    }

    let term = |x: &HPComplex, y: &HPComplex| -> Result<SeriesResult> {
        let s = qq / x;
        let t = match id {
            IdentityId::I4_2 => {
                let b1 = neg(&(z2 * q) / x);
                let num = vec![
                    ("-z^2q/c1", b1.clone()),
                    ("-z^2q^2/c1", &b1 * q),
                    ("z^2q^(a-1)/(c1c2)", &(z2 * qa) / &(q * &(x * y))),
                    ("c1q^(5-a)/z^2", &(x * &e.qp(5)) / &(z2 * qa)),
                ];
                let series = TermSpec::new(q, &(qa * z2) / &x.square()).quad(4, 2).den(b1.clone(), 2).den(&b1 * q, 2);
                Term { coef: qq.clone(), num, den: e.den_t(x, y).to_vec(), series, bilateral: true }
            }
            IdentityId::I4_3 => {
                let b1 = neg(&(z2 * qq) / x);
                let num = vec![("-z^2q^2/c1", b1.clone()), ("-z^2q^3/c1", &b1 * q), ("z^2/c2", z2 / y), ("c1/z^2", x / z2)];
                let series = TermSpec::new(q, z2 / &x.square()).quad(4, 6).den(b1.clone(), 2).den(&b1 * q, 2);
                Term { coef: &(qq * qa) / x, num, den: e.den_t(x, y).to_vec(), series, bilateral: true }
            }
            IdentityId::I4_4 => {
                let num = vec![
                    ("-c1/z^2", neg(x / z2)),
                    ("-c1/(z^2q)", neg(&(x / z2) / q)),
                    ("z^6/(q^(2a)c2)", &z6 / &(&qa2 * y)),
                    ("c1q^(2a)/z^2", &(x * &qa2) / z2),
                ];
                let a1 = neg(&(z2 * qq) / x);
                let series = TermSpec::new(q, &(z2 * q) / &qa2).num(a1.clone(), 2).num(&a1 * q, 2);
                Term { coef: s.clone(), num, den: e.den_t(x, y).to_vec(), series, bilateral: true }
            }
            _ => {
                let num = vec![
                    ("-c1/z^2", neg(x / z2)),
                    ("-qc1/z^2", neg(&(x * q) / z2)),
                    ("z^6q^(-2-2a)/c2", &z6 / &(&(&qa2 * qq) * y)),
                    ("c2q^(2+2a)/z^6", &(&(y * qq) * &qa2) / &z6),
                ];
                let a1 = neg(&(z2 * q) / x);
                let series = TermSpec::new(q, &(z2 * q) / &qa2).num(a1.clone(), 2).num(&a1 * q, 2);
                Term { coef: s.clone(), num, den: e.den_t(x, y).to_vec(), series, bilateral: true }
            }
        };
        t.eval(e)
    };
    let rhs = sum_with_idem(term, c1, c2)?;
    let mut sides = Sides::new(lhs, rhs);
    sides.notes = notes;
    Ok(sides)
}

/// Both sides of identity 4.2 to 4.5 in the requested variant.
pub(crate) fn bilateral_sides(id: IdentityId, variant: Variant, e: &Env) -> Result<Sides> {
    match variant {
        Variant::Printed => printed(id, e),
        Variant::Derived => derived(id, e),
    }
}

pub fn check_bilateral_expansion(
    id: IdentityId,
    variant: Variant,
    p: &ParameterPoint,
    opts: &CheckOptions,
) -> Result<ResidualRecord> {
    if !matches!(id, IdentityId::I4_2 | IdentityId::I4_3 | IdentityId::I4_4 | IdentityId::I4_5) {
        return Err(Error::Usage(alloc::format!("{id} is not a bilateral expansion")));
    }
    let e = Env::new(p, &opts.policy)?;
    let mut sides = bilateral_sides(id, variant, &e)?;
    sides.notes.splice(0..0, e.notes.iter().cloned());
    Ok(ResidualRecord::from_sides(id, Some(variant), &e.p, Vec::new(), sides, opts))
}

/// Identities 4.2 to 4.5 evaluated straight from the general `(c1, c2)`
/// expansion; the left side holds the raw `2 psi 2` series.
pub fn bilateral_generic(id: IdentityId, p: &ParameterPoint, policy: &TruncationPolicy) -> Result<Sides> {
    let e = Env::new(p, policy)?;
    let inp = super::phi1::generic_input(id, &e)?;
    slater_4_1(&inp, &[p.c1.clone(), p.c2.clone()], policy)
}
