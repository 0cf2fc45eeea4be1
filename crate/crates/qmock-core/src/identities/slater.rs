//! Two-term expansions of a general `2 psi 2` series.
//!
//! With `Q = q^k`, `d z = a1 a2 z / (c1 c2)` and `(x)` short for `(x; Q)_inf`:
//!
//! ```text
//! (b1, b2, Q/a1, Q/a2, dz, Q/dz) / (c1, c2, Q/c1, Q/c2) psi(a; b; z)
//!   = Q/c1 (c1/a1, c1/a2, Qb1/c1, Qb2/c1, dc1z/Q, Q^2/(dc1z)) / (c1, Q/c1, c1/c2, Qc2/c1)
//!       psi(Qa/c1; Qb/c1; z) + idem(c1; c2)
//!
//! (Q/a1, Q/a2, dz, Q/dz) / (Q/b1, Q/b2) psi(a; b; z)      [d = a1 a2 / (b1 b2) here]
//!   = Q/b1 (Q, b1/a1, b1/a2, db1z/Q, Q^2/(db1z)) / (b1, Q/b1, b1/b2)
//!       phi(Qa1/b1, Qa2/b1; Qb2/b1; z) + idem(b1; b2)
//!
//! (b1, b2, Q/a1, Q/a2, z, Q/z) / (Qa1, Qa2, 1/a1, 1/a2) psi(a; b; z)
//!   = a1 (Q, Qa1/a2, b1/a1, b2/a1, a1z, Q/(a1z)) / (Qa1, 1/a1, a1/a2, Qa2/a1)
//!       phi(Qa1/b1, Qa1/b2; Qa1/a2; b1b2/(a1a2z)) + idem(a1; a2)
//! ```
//!
//! Infinite `a` slots (first two expansions) and zero `b` slots (the third)
//! are handled by the rescaled-argument convention of [`Param::Infinite`].

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::{div, scale, sum_with_idem, CheckOptions, IdentityId, Products, ResidualRecord};
use crate::hyper::{phi_eval, psi2_eval, Param, PhiSpec, Psi2Spec};
use crate::mocktheta::ParameterPoint;
use crate::qcore::{SeriesResult, TruncationPolicy};
use crate::{Error, HPComplex, Result};

/// Both sides of an identity together with any side information.
#[derive(Clone, Debug)]
pub struct Sides {
    pub lhs: SeriesResult,
    pub rhs: SeriesResult,
    pub notes: Vec<String>,
    pub extras: Vec<(String, HPComplex)>,
}

impl Sides {
    pub fn new(lhs: SeriesResult, rhs: SeriesResult) -> Self {
        Sides { lhs, rhs, notes: Vec::new(), extras: Vec::new() }
    }
}

/// `2 psi 2 (a1, a2; b1, b2; q^k, z)`, with `z` rescaled for infinite slots.
#[derive(Clone, Debug)]
pub struct SlaterInput {
    pub a: [Param; 2],
    pub b: [HPComplex; 2],
    pub q: HPComplex,
    pub k: u32,
    pub z: HPComplex,
}

const A_LABEL: [&str; 2] = ["a1", "a2"];
const QA_LABEL: [&str; 2] = ["Q/a1", "Q/a2"];

impl SlaterInput {
    fn qk(&self) -> HPComplex {
        self.q.powi(self.k as i64).expect("nonzero base")
    }

    /// Product of the finite `a` slots and the number of infinite ones.
    fn finite_part(&self) -> (HPComplex, i64) {
        let mut fin = HPComplex::one(self.q.prec());
        let mut inf = 0;
        for a in &self.a {
            match a {
                Param::Finite(a) => fin = &fin * a,
                Param::Infinite => inf += 1,
            }
        }
        (fin, inf)
    }

    fn psi(&self, policy: &TruncationPolicy) -> Result<SeriesResult> {
        let spec = Psi2Spec { a: self.a.clone(), b: self.b.clone(), q: self.q.clone(), k: self.k, z: self.z.clone() };
        psi2_eval(&spec, policy)
    }

    fn over_a(&self, x: &HPComplex, num: &mut Vec<(&'static str, HPComplex)>, labels: [&'static str; 2]) -> Result<()> {
        for (i, a) in self.a.iter().enumerate() {
            if let Some(a) = a.finite() {
                num.push((labels[i], div(x, a, A_LABEL[i])?));
            }
        }
        Ok(())
    }
}

fn nonzero(x: &HPComplex, what: &str) -> Result<()> {
    if x.is_zero() {
        return Err(Error::Domain(alloc::format!("{what} must be nonzero")));
    }
    Ok(())
}

/// Both sides of the `(c1, c2)` expansion.
pub fn slater_4_1(inp: &SlaterInput, c: &[HPComplex; 2], policy: &TruncationPolicy) -> Result<Sides> {
    nonzero(&c[0], "c1")?;
    nonzero(&c[1], "c2")?;
    let qq = inp.qk();
    let pr = Products { q: &inp.q, k: inp.k, policy };
    let (fin, ninf) = inp.finite_part();
    let dz = div(&(&fin * &inp.z), &(&c[0] * &c[1]), "c1 c2")?;
    let mut num = vec![("b1", inp.b[0].clone()), ("b2", inp.b[1].clone())];
    inp.over_a(&qq, &mut num, QA_LABEL)?;
    num.push(("dz", dz.clone()));
    num.push(("Q/dz", div(&qq, &dz, "dz")?));
    let den = [
        ("c1", c[0].clone()),
        ("c2", c[1].clone()),
        ("Q/c1", &qq / &c[0]),
        ("Q/c2", &qq / &c[1]),
    ];
    let lhs = pr.ratio(&num, &den)?.times(&inp.psi(policy)?);

    let term = |x: &HPComplex, y: &HPComplex| -> Result<SeriesResult> {
        let s = &qq / x;
        let mut num = Vec::new();
        inp.over_a(x, &mut num, ["c1/a1", "c1/a2"])?;
        let dcz = &(&dz * x) / &qq;
        num.push(("Qb1/c1", &inp.b[0] * &s));
        num.push(("Qb2/c1", &inp.b[1] * &s));
        num.push(("dc1z/Q", dcz.clone()));
        num.push(("Q/(dc1z/Q)", div(&qq, &dcz, "dc1z")?));
        let den = [("c1", x.clone()), ("Q/c1", s.clone()), ("c1/c2", x / y), ("Qc2/c1", y * &s)];
        let spec = SlaterInput {
            a: [inp.a[0].scaled(&s), inp.a[1].scaled(&s)],
            b: [&inp.b[0] * &s, &inp.b[1] * &s],
            q: inp.q.clone(),
            k: inp.k,
            z: &inp.z * &s.powi(ninf).expect("nonzero"),
        };
        Ok(scale(pr.ratio(&num, &den)?.times(&spec.psi(policy)?), &s))
    };
    let rhs = sum_with_idem(term, &c[0], &c[1])?;
    Ok(Sides::new(lhs, rhs))
}

/// Both sides of the `(b1, b2)` expansion into `2 phi 1` series.
pub fn expansion_5_1(inp: &SlaterInput, policy: &TruncationPolicy) -> Result<Sides> {
    nonzero(&inp.b[0], "b1")?;
    nonzero(&inp.b[1], "b2")?;
    let qq = inp.qk();
    let pr = Products { q: &inp.q, k: inp.k, policy };
    let (fin, ninf) = inp.finite_part();
    let dz = &(&fin * &inp.z) / &(&inp.b[0] * &inp.b[1]);
    let mut num = Vec::new();
    inp.over_a(&qq, &mut num, QA_LABEL)?;
    num.push(("dz", dz.clone()));
    num.push(("Q/dz", div(&qq, &dz, "dz")?));
    let den = [("Q/b1", &qq / &inp.b[0]), ("Q/b2", &qq / &inp.b[1])];
    let lhs = pr.ratio(&num, &den)?.times(&inp.psi(policy)?);

    let term = |x: &HPComplex, y: &HPComplex| -> Result<SeriesResult> {
        let s = &qq / x;
        let mut num = vec![("Q", qq.clone())];
        inp.over_a(x, &mut num, ["b1/a1", "b1/a2"])?;
        let dbz = &(&dz * x) / &qq;
        num.push(("db1z/Q", dbz.clone()));
        num.push(("Q/(db1z/Q)", div(&qq, &dbz, "db1z")?));
        let den = [("b1", x.clone()), ("Q/b1", s.clone()), ("b1/b2", x / y)];
        let spec = PhiSpec {
            numer: vec![inp.a[0].scaled(&s), inp.a[1].scaled(&s)],
            denom: vec![y * &s],
            q: inp.q.clone(),
            k: inp.k,
            z: &inp.z * &s.powi(ninf).expect("nonzero"),
        };
        Ok(scale(pr.ratio(&num, &den)?.times(&phi_eval(&spec, policy)?), &s))
    };
    let rhs = sum_with_idem(term, &inp.b[0], &inp.b[1])?;
    Ok(Sides::new(lhs, rhs))
}

/// Both sides of the `(a1, a2)` expansion into `2 phi 1` series. The `a`
/// slots must be finite; a zero `b` becomes an infinite `phi` numerator.
pub fn expansion_6_1(inp: &SlaterInput, policy: &TruncationPolicy) -> Result<Sides> {
    let a: Vec<HPComplex> = inp
        .a
        .iter()
        .map(|a| a.finite().cloned().ok_or_else(|| Error::Domain("a1, a2 must be finite here".into())))
        .collect::<Result<_>>()?;
    nonzero(&a[0], "a1")?;
    nonzero(&a[1], "a2")?;
    nonzero(&inp.z, "z")?;
    let qq = inp.qk();
    let pr = Products { q: &inp.q, k: inp.k, policy };
    let num = [
        ("b1", inp.b[0].clone()),
        ("b2", inp.b[1].clone()),
        ("Q/a1", &qq / &a[0]),
        ("Q/a2", &qq / &a[1]),
        ("z", inp.z.clone()),
        ("Q/z", &qq / &inp.z),
    ];
    let den = [
        ("Qa1", &qq * &a[0]),
        ("Qa2", &qq * &a[1]),
        ("1/a1", a[0].recip().expect("nonzero")),
        ("1/a2", a[1].recip().expect("nonzero")),
    ];
    let lhs = pr.ratio(&num, &den)?.times(&inp.psi(policy)?);

    let term = |x: &HPComplex, y: &HPComplex| -> Result<SeriesResult> {
        let qx = &qq * x;
        let num = [
            ("Q", qq.clone()),
            ("Qa1/a2", &qx / y),
            ("b1/a1", &inp.b[0] / x),
            ("b2/a1", &inp.b[1] / x),
            ("a1z", x * &inp.z),
            ("Q/(a1z)", &qq / &(x * &inp.z)),
        ];
        let den = [("Qa1", qx.clone()), ("1/a1", x.recip().expect("nonzero")), ("a1/a2", x / y), ("Qa2/a1", &(&qq * y) / x)];
        let mut arg = (x * y * &inp.z).recip().expect("nonzero");
        let mut numer = Vec::new();
        for b in &inp.b {
            if b.is_zero() {
                numer.push(Param::Infinite);
                arg = &arg * &qx;
            } else {
                numer.push(Param::Finite(&qx / b));
                arg = &arg * b;
            }
        }
        let spec = PhiSpec { numer, denom: vec![&qx / y], q: inp.q.clone(), k: inp.k, z: arg };
        Ok(scale(pr.ratio(&num, &den)?.times(&phi_eval(&spec, policy)?), x))
    };
    let rhs = sum_with_idem(term, &a[0], &a[1])?;
    Ok(Sides::new(lhs, rhs))
}

fn inputs(a: &[Param; 2], b: &[HPComplex; 2]) -> (Vec<(String, HPComplex)>, Vec<String>) {
    let mut inputs = Vec::new();
    let mut notes = Vec::new();
    for (i, a) in a.iter().enumerate() {
        match a {
            Param::Finite(v) => inputs.push((String::from(A_LABEL[i]), v.clone())),
            Param::Infinite => notes.push(alloc::format!("{} = inf (z rescaled)", A_LABEL[i])),
        }
    }
    inputs.push((String::from("b1"), b[0].clone()));
    inputs.push((String::from("b2"), b[1].clone()));
    (inputs, notes)
}

fn finish(
    id: IdentityId,
    p: &ParameterPoint,
    a: &[Param; 2],
    b: &[HPComplex; 2],
    mut sides: Sides,
    opts: &CheckOptions,
) -> ResidualRecord {
    let (inp, notes) = inputs(a, b);
    sides.notes.extend(notes);
    ResidualRecord::from_sides(id, None, p, inp, sides, opts)
}

fn input(p: &ParameterPoint, a: &[Param; 2], b: &[HPComplex; 2]) -> SlaterInput {
    SlaterInput { a: a.clone(), b: b.clone(), q: p.q.clone(), k: 1, z: p.z.clone() }
}

/// Residual of the `(c1, c2)` expansion at base `q`, using the point's
/// `q, z, c1, c2`.
pub fn check_slater_4_1(p: &ParameterPoint, a: &[Param; 2], b: &[HPComplex; 2], opts: &CheckOptions) -> Result<ResidualRecord> {
    let sides = slater_4_1(&input(p, a, b), &[p.c1.clone(), p.c2.clone()], &opts.policy)?;
    Ok(finish(IdentityId::I4_1, p, a, b, sides, opts))
}

pub fn check_general_5_1(p: &ParameterPoint, a: &[Param; 2], b: &[HPComplex; 2], opts: &CheckOptions) -> Result<ResidualRecord> {
    let sides = expansion_5_1(&input(p, a, b), &opts.policy)?;
    Ok(finish(IdentityId::I5_1, p, a, b, sides, opts))
}

pub fn check_general_6_1(p: &ParameterPoint, a: &[Param; 2], b: &[HPComplex; 2], opts: &CheckOptions) -> Result<ResidualRecord> {
    let sides = expansion_6_1(&input(p, a, b), &opts.policy)?;
    Ok(finish(IdentityId::I6_1, p, a, b, sides, opts))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::identities::Verdict;
    use crate::{Real, DEFAULT_BITS as P};

    fn c(s: &str) -> HPComplex {
        HPComplex::parse(s, P).unwrap()
    }

    fn point(q: &str, z: &str, c1: &str, c2: &str) -> ParameterPoint {
        ParameterPoint { q: c(q), z: c(z), t: c("0"), alpha: Real::from_i64(1, P), c1: c(c1), c2: c(c2) }
    }

    fn fin(a: &str, b: &str) -> [Param; 2] {
        [Param::Finite(c(a)), Param::Finite(c(b))]
    }

    #[test]
    fn expansions_hold_at_a_generic_point() {
        let opts = CheckOptions::default();
        let p = point("0.3", "0.5", "0.35", "0.45");
        let (a, b) = (fin("0.6", "0.8"), [c("0.1"), c("0.2")]);
        for r in [
            check_slater_4_1(&p, &a, &b, &opts).unwrap(),
            check_general_5_1(&p, &a, &b, &opts).unwrap(),
            check_general_6_1(&p, &a, &b, &opts).unwrap(),
        ] {
            assert_eq!(r.verdict, Verdict::Pass, "{} rel {:?}", r.identity, r.rel_residual);
        }
    }

    #[test]
    fn equal_c_is_a_pole() {
        let p = point("0.3", "0.5", "0.4", "0.4");
        let e = check_slater_4_1(&p, &fin("0.6", "0.8"), &[c("0.1"), c("0.2")], &CheckOptions::default()).unwrap_err();
        assert!(e.is_pole(), "{e}");
    }

    #[test]
    fn zero_b_limit_matches_small_b() {
        let p = point("0.3", "0.5", "0.1", "0.2");
        let opts = CheckOptions::default();
        let a = fin("0.6", "0.8");
        let r0 = check_general_6_1(&p, &a, &[c("0"), c("0")], &opts).unwrap();
        assert_eq!(r0.verdict, Verdict::Pass);
        let r1 = check_general_6_1(&p, &a, &[c("1e-15"), c("1e-15")], &opts).unwrap();
        let d = crate::mocktheta::rel_diff(r0.lhs.as_ref().unwrap(), r1.lhs.as_ref().unwrap());
        assert!(d.log2_abs() < -40.0);
    }

    #[test]
    fn infinite_slots_still_balance() {
        let p = point("0.3", "1.3", "0.35", "0.45");
        let a = [Param::Infinite, Param::Infinite];
        let b = [c("0.1"), c("0.2")];
        let opts = CheckOptions::default();
        assert_eq!(check_slater_4_1(&p, &a, &b, &opts).unwrap().verdict, Verdict::Pass);
        assert_eq!(check_general_5_1(&p, &a, &b, &opts).unwrap().verdict, Verdict::Pass);
    }
}
