//! Complete `psi0, psi1` through the `(b1, b2)` expansion and complete
//! `phi0, phi1` through the `(a1, a2)` expansion (identities 5.2, 5.3, 6.2,
//! 6.3), all over base `q^2`.
//!
//! The displayed forms are already specialized; to apply `idem` they are
//! read back as functions of the swapped slots, with factors that do not
//! depend on a slot kept fixed.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::bilateral::{Env, Term};
use super::slater::{expansion_5_1, expansion_6_1, Sides, SlaterInput};
use super::{div, scale, sum_with_idem, CheckOptions, IdentityId, ResidualRecord, Variant};
use crate::hyper::Param;
use crate::mocktheta::{Family, ParameterPoint};
use crate::qcore::{SeriesResult, TruncationPolicy};
use crate::series::TermSpec;
use crate::{Error, HPComplex, Result};

fn neg(x: HPComplex) -> HPComplex {
    -x
}

/// Family on the left of an identity and the factor `r` with
/// `2psi2 = r * family` for the specialized series.
fn family_of(id: IdentityId, e: &Env) -> Result<(Family, HPComplex)> {
    let one = HPComplex::one(e.q.prec());
    Ok(match id {
        IdentityId::I4_2 | IdentityId::I5_2 => (Family::Psi0, one),
        IdentityId::I4_3 | IdentityId::I5_3 => (Family::Psi1, e.one_plus()),
        IdentityId::I4_4 | IdentityId::I6_2 => {
            (Family::Phi0, e.one_plus().recip().ok_or_else(|| Error::Pole("1 + z^2/q = 0".into()))?)
        }
        _ => (Family::Phi1, one),
    })
}

/// The `2 psi 2` data each specialized identity starts from.
pub(crate) fn generic_input(id: IdentityId, e: &Env) -> Result<SlaterInput> {
    let (q, z2, qa) = (&e.q, &e.z2, &e.qa);
    let zero = HPComplex::zero(q.prec());
    let w = &(z2 * q) / &qa.square();
    let (a, b, z) = match id {
        IdentityId::I4_2 | IdentityId::I5_2 => {
            ([Param::Infinite, Param::Infinite], [neg(z2 / q), neg(z2.clone())], &(z2 * qa) / q)
        }
        IdentityId::I4_3 | IdentityId::I5_3 => {
            ([Param::Infinite, Param::Infinite], [neg(z2.clone()), neg(z2 * q)], &(z2 * qa) * q)
        }
        IdentityId::I4_4 | IdentityId::I6_2 => {
            ([Param::Finite(neg(z2.clone())), Param::Finite(neg(z2 * q))], [zero.clone(), zero], w)
        }
        IdentityId::I4_5 | IdentityId::I6_3 => {
            ([Param::Finite(neg(z2 / q)), Param::Finite(neg(z2.clone()))], [zero.clone(), zero], w)
        }
        _ => return Err(Error::Usage(alloc::format!("{id} has no 2psi2 specialization"))),
    };
    Ok(SlaterInput { a, b, q: q.clone(), k: 2, z })
}

fn slots(inp: &SlaterInput) -> [HPComplex; 2] {
    match (&inp.a[0], &inp.a[1]) {
        (Param::Finite(a1), Param::Finite(a2)) => [a1.clone(), a2.clone()],
        _ => inp.b.clone(),
    }
}

fn derived(id: IdentityId, e: &Env) -> Result<Sides> {
    let (q, qq) = (&e.q, &e.qq);
    let inp = generic_input(id, e)?;
    let s = slots(&inp);
    let (family, conv) = family_of(id, e)?;
    let f = e.complete(family)?;
    let lhs;
    let rhs;
    if matches!(id, IdentityId::I5_2 | IdentityId::I5_3) {
        // d z = Z/(b1 b2)
        let dz = div(&inp.z, &(&s[0] * &s[1]), "b1 b2")?;
        let num = [("dz", dz.clone()), ("Q/dz", qq / &dz)];
        let den = [("Q/b1", qq / &s[0]), ("Q/b2", qq / &s[1])];
        lhs = scale(e.pr().ratio(&num, &den)?.times(&f), &conv);
        let term = |x: &HPComplex, y: &HPComplex| -> Result<SeriesResult> {
            let dbz = &(&dz * x) / qq;
            let series = TermSpec::new(q, &(&inp.z * &qq.square()) / &x.square())
                .quad(4, -4)
                .den(&(qq * y) / x, 2)
                .den(qq.clone(), 2);
            Term {
                coef: qq / x,
                num: vec![("Q", qq.clone()), ("db1z/Q", dbz.clone()), ("Q/(db1z/Q)", qq / &dbz)],
                den: vec![("b1", x.clone()), ("Q/b1", qq / x), ("b1/b2", x / y)],
                series,
                bilateral: false,
            }
            .eval(e)
        };
        rhs = sum_with_idem(term, &s[0], &s[1])?;
    } else {
        let w = &inp.z;
        let num = [("Q/a1", qq / &s[0]), ("Q/a2", qq / &s[1]), ("w", w.clone()), ("Q/w", qq / w)];
        let den = [("Qa1", qq * &s[0]), ("Qa2", qq * &s[1]), ("1/a1", s[0].recip().expect("nonzero")), ("1/a2", s[1].recip().expect("nonzero"))];
        lhs = scale(e.pr().ratio(&num, &den)?.times(&f), &conv);
        let term = |x: &HPComplex, y: &HPComplex| -> Result<SeriesResult> {
            let xw = x * w;
            let series = TermSpec::new(q, &(&qq.square() * x) / &(y * w))
                .quad(4, -4)
                .den(&(qq * x) / y, 2)
                .den(qq.clone(), 2);
            Term {
                coef: x.clone(),
                num: vec![("Q", qq.clone()), ("Qa1/a2", &(qq * x) / y), ("a1w", xw.clone()), ("Q/(a1w)", qq / &xw)],
                den: vec![("Qa1", qq * x), ("1/a1", x.recip().expect("nonzero")), ("a1/a2", x / y), ("Qa2/a1", &(qq * y) / x)],
                series,
                bilateral: false,
            }
            .eval(e)
        };
        rhs = sum_with_idem(term, &s[0], &s[1])?;
    }
    Ok(Sides::new(lhs, rhs))
}

fn printed(id: IdentityId, e: &Env) -> Result<Sides> {
    let (q, qq, z2, qa) = (&e.q, &e.qq, &e.z2, &e.qa);
    let (c1, c2) = (&e.p.c1, &e.p.c2);
    let cc = c1 * c2;
    let z4 = z2.square();
    let inp = generic_input(id, e)?;
    let s = slots(&inp);
    let (family, _) = family_of(id, e)?;
    let lhs = e.complete(family)?;
    let mut notes = Vec::new();
    let rhs = match id {
        IdentityId::I5_2 | IdentityId::I5_3 => {
            let fixed_num;
            let fixed_den;
            if id == IdentityId::I5_2 {
                fixed_num = vec![
                    ("Q", qq.clone()),
                    ("-z^4q^(a-4)/(c1c2)", neg(div(&(&z4 * qa), &(&cc * &e.qp(4)), "c1 c2")?)),
                    ("-q^(6-a)c1c2/z^4", neg(&(&e.qp(6) * &cc) / &(qa * &z4))),
                ];
                fixed_den = vec![
                    ("z^2q^(a-1)/(c1c2)", div(&(z2 * qa), &(q * &cc), "c1 c2")?),
                    ("c1c2q^(3-a)/z^2", &(&cc * &e.qp(3)) / &(qa * z2)),
                ];
            } else {
                fixed_num = vec![
                    ("q^4", e.qp(4)),
                    ("-z^4q^a/(c1c2)", neg(div(&(&z4 * qa), &cc, "c1 c2")?)),
                    ("-q^(3-a)c1c2/z^4", neg(&(&e.qp(3) * &cc) / &(qa * &z4))),
                ];
                fixed_den = vec![
                    ("z^2q^(a+1)/(c1c2)", div(&(&(z2 * qa) * q), &cc, "c1 c2")?),
                    ("c1c2q^(1-a)/z^2", &(&cc * q) / &(qa * z2)),
                ];
                notes.push(String::from("summand has no (q^2; q^2)_n, as displayed"));
            }
            let term = |x: &HPComplex, y: &HPComplex| -> Result<SeriesResult> {
                let mut num = fixed_num.clone();
                num.push(("Q/b2", qq / y));
                let mut den = vec![("b1", x.clone()), ("b1/b2", x / y)];
                den.extend(fixed_den.iter().cloned());
                let mut series =
                    TermSpec::new(q, &(&inp.z * &qq.square()) / &(&x.square() * qa)).quad(4, -4).den(&(qq * y) / x, 2);
                if id == IdentityId::I5_2 {
                    series = series.den(qq.clone(), 2);
                }
                Term { coef: &(qq * qa) / x, num, den, series, bilateral: false }.eval(e)
            };
            sum_with_idem(term, &s[0], &s[1])?
        }
        _ => {
            let w = inp.z.clone();
            let fixed = if id == IdentityId::I6_3 {
                notes.push(String::from("slot-independent factors -z^2q^(-2a), -q^2/z^2, -q/z^2 kept as displayed"));
                Some((neg(z2 / &qa.square()), neg(qq / z2), neg(q / z2)))
            } else {
                None
            };
            let term = |x: &HPComplex, y: &HPComplex| -> Result<SeriesResult> {
                let xw = x * &w;
                let (y1, d1, d2) = match &fixed {
                    Some((y1, d1, d2)) => (y1.clone(), d1.clone(), d2.clone()),
                    None => (xw.clone(), qq / x, qq / y),
                };
                let num = vec![
                    ("Q", qq.clone()),
                    ("Qa1/a2", &(qq * x) / y),
                    ("a1w", y1),
                    ("Q/(a1w)", qq / &xw),
                    ("Qa2", qq * y),
                    ("1/a2", y.recip().expect("nonzero")),
                ];
                let den =
                    vec![("a1/a2", x / y), ("Qa2/a1", &(qq * y) / x), ("Q/a1", d1), ("Q/a2", d2), ("w", w.clone()), ("Q/w", qq / &w)];
                let series = TermSpec::new(q, w.clone()).den(&(qq * x) / y, 2);
                Term { coef: x.clone(), num, den, series, bilateral: false }.eval(e)
            };
            sum_with_idem(term, &s[0], &s[1])?
        }
    };
    let mut sides = Sides::new(lhs, rhs);
    sides.notes = notes;
    Ok(sides)
}

pub fn check_phi1_expansion(id: IdentityId, variant: Variant, p: &ParameterPoint, opts: &CheckOptions) -> Result<ResidualRecord> {
    if !matches!(id, IdentityId::I5_2 | IdentityId::I5_3 | IdentityId::I6_2 | IdentityId::I6_3) {
        return Err(Error::Usage(alloc::format!("{id} is not a 2phi1 expansion")));
    }
    let e = Env::new(p, &opts.policy)?;
    let mut sides = match variant {
        Variant::Printed => printed(id, &e)?,
        Variant::Derived => derived(id, &e)?,
    };
    sides.notes.splice(0..0, e.notes.iter().cloned());
    Ok(ResidualRecord::from_sides(id, Some(variant), &e.p, Vec::new(), sides, opts))
}

/// Identities 5.2 to 6.3 evaluated straight from the general expansions.
pub fn phi1_generic(id: IdentityId, p: &ParameterPoint, policy: &TruncationPolicy) -> Result<Sides> {
    let e = Env::new(p, policy)?;
    let inp = generic_input(id, &e)?;
    match id {
        IdentityId::I5_2 | IdentityId::I5_3 => expansion_5_1(&inp, policy),
        IdentityId::I6_2 | IdentityId::I6_3 => expansion_6_1(&inp, policy),
        _ => Err(Error::Usage(alloc::format!("{id} is not a 2phi1 expansion"))),
    }
}

/// `2psi2 = r * f` for the specialized series, exposed for consistency checks.
pub fn specialization_factor(id: IdentityId, p: &ParameterPoint, policy: &TruncationPolicy) -> Result<(Family, HPComplex)> {
    let e = Env::new(p, policy)?;
    family_of(id, &e)
}
