//! Residual checks for the transformation and expansion identities.
//!
//! Every check evaluates both sides independently and returns a
//! [`ResidualRecord`]. Identities taken from standard references are
//! asserted against a tolerance; the specializations derived from them are
//! only reported, usually in two variants: the formula as displayed and a
//! re-derivation by direct substitution.

mod bilateral;
mod phi1;
mod slater;

use alloc::boxed::Box;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::mocktheta::{rel_diff, ParameterPoint};
use crate::qcore::{qpoch_infinite, SeriesResult, SeriesStatus, TruncationPolicy};
use crate::series::combine;
use crate::{Error, HPComplex, Real, Result};

pub use bilateral::{bilateral_generic, check_bilateral_expansion};
pub use phi1::{check_phi1_expansion, phi1_generic, specialization_factor};
pub use slater::{
    check_general_5_1, check_general_6_1, check_slater_4_1, expansion_5_1, expansion_6_1, slater_4_1, Sides,
    SlaterInput,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IdentityId {
    I4_1,
    I4_2,
    I4_3,
    I4_4,
    I4_5,
    I5_1,
    I5_2,
    I5_3,
    I6_1,
    I6_2,
    I6_3,
    I7_1,
    I7_4,
    I7_5,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Trust {
    Established,
    Derived,
}

impl Trust {
    pub fn name(self) -> &'static str {
        match self {
            Trust::Established => "established",
            Trust::Derived => "derived",
        }
    }
}

impl IdentityId {
    pub const ALL: [IdentityId; 14] = [
        IdentityId::I4_1,
        IdentityId::I4_2,
        IdentityId::I4_3,
        IdentityId::I4_4,
        IdentityId::I4_5,
        IdentityId::I5_1,
        IdentityId::I5_2,
        IdentityId::I5_3,
        IdentityId::I6_1,
        IdentityId::I6_2,
        IdentityId::I6_3,
        IdentityId::I7_1,
        IdentityId::I7_4,
        IdentityId::I7_5,
    ];

    pub fn name(self) -> &'static str {
        match self {
            IdentityId::I4_1 => "4.1",
            IdentityId::I4_2 => "4.2",
            IdentityId::I4_3 => "4.3",
            IdentityId::I4_4 => "4.4",
            IdentityId::I4_5 => "4.5",
            IdentityId::I5_1 => "5.1",
            IdentityId::I5_2 => "5.2",
            IdentityId::I5_3 => "5.3",
            IdentityId::I6_1 => "6.1",
            IdentityId::I6_2 => "6.2",
            IdentityId::I6_3 => "6.3",
            IdentityId::I7_1 => "7.1",
            IdentityId::I7_4 => "7.4",
            IdentityId::I7_5 => "7.5",
        }
    }

    pub fn parse(s: &str) -> Result<IdentityId> {
        IdentityId::ALL
            .into_iter()
            .find(|i| i.name() == s.trim())
            .ok_or_else(|| Error::Usage(format!("unknown identity id {s:?}")))
    }

    pub fn trust(self) -> Trust {
        match self {
            IdentityId::I4_1 | IdentityId::I5_1 | IdentityId::I6_1 | IdentityId::I7_1 => Trust::Established,
            _ => Trust::Derived,
        }
    }

    /// Whether the check is run once per [`Variant`].
    pub fn has_variants(self) -> bool {
        self.trust() == Trust::Derived
    }

    pub fn description(self) -> &'static str {
        match self {
            IdentityId::I4_1 => "2psi2 expansion into two shifted 2psi2 series over (c1, c2)",
            IdentityId::I4_2 => "complete psi0 as a sum of two bilateral series",
            IdentityId::I4_3 => "complete psi1 as a sum of two bilateral series",
            IdentityId::I4_4 => "complete phi0 as a sum of two bilateral series",
            IdentityId::I4_5 => "complete phi1 as a sum of two bilateral series",
            IdentityId::I5_1 => "2psi2 expansion into two 2phi1 series over (b1, b2)",
            IdentityId::I5_2 => "complete psi0 as a sum of two 2phi1-type series",
            IdentityId::I5_3 => "complete psi1 as a sum of two 2phi1-type series",
            IdentityId::I6_1 => "2psi2 expansion into two 2phi1 series over (a1, a2)",
            IdentityId::I6_2 => "complete phi0 as a sum of two 2phi1-type series",
            IdentityId::I6_3 => "complete phi1 as a sum of two 2phi1-type series",
            IdentityId::I7_1 => "series ratio equals a Rogers-Ramanujan type continued fraction",
            IdentityId::I7_4 => "continued fraction representation of complete psi0",
            IdentityId::I7_5 => "continued fraction representation of complete psi1",
        }
    }

    /// Point keys the check reads.
    pub fn parameters(self) -> &'static str {
        match self {
            IdentityId::I4_1 => "q z c1 c2 a1 a2 b1 b2",
            IdentityId::I5_1 | IdentityId::I6_1 => "q z a1 a2 b1 b2",
            IdentityId::I7_1 => "q lambda beta",
            IdentityId::I5_2 | IdentityId::I5_3 | IdentityId::I6_2 | IdentityId::I6_3 => "q z alpha c1 c2",
            _ => "q z alpha c1 c2",
        }
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Which transcription of a derived identity a record belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Variant {
    /// The formula as displayed, factor for factor.
    Printed,
    /// Re-derived by substituting into the parent identity.
    Derived,
}

impl Variant {
    pub const BOTH: [Variant; 2] = [Variant::Printed, Variant::Derived];

    pub fn name(self) -> &'static str {
        match self {
            Variant::Printed => "printed",
            Variant::Derived => "derived",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Pass,
    Fail,
    Report,
    Singular,
}

impl Verdict {
    pub fn name(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Report => "report",
            Verdict::Singular => "singular",
        }
    }
}

#[derive(Clone, Debug)]
pub struct CheckOptions {
    pub policy: TruncationPolicy,
    /// Relative residual below which an established identity passes.
    pub assert_tol: f64,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions { policy: TruncationPolicy::default(), assert_tol: 1e-30 }
    }
}

#[derive(Clone, Debug)]
pub struct ResidualRecord {
    pub identity: IdentityId,
    pub variant: Option<Variant>,
    pub point: ParameterPoint,
    /// Parameters beyond the point itself (a1, b2, lambda, ...).
    pub inputs: Vec<(String, HPComplex)>,
    pub lhs: Option<HPComplex>,
    pub rhs: Option<HPComplex>,
    pub abs_residual: Option<Real>,
    pub rel_residual: Option<Real>,
    pub lhs_status: SeriesStatus,
    pub rhs_status: SeriesStatus,
    pub verdict: Verdict,
    pub notes: Vec<String>,
    pub extras: Vec<(String, HPComplex)>,
}

impl ResidualRecord {
    /// Record for a point where one side could not be evaluated.
    pub fn singular(identity: IdentityId, variant: Option<Variant>, point: ParameterPoint, reason: &Error) -> Self {
        ResidualRecord {
            identity,
            variant,
            point,
            inputs: Vec::new(),
            lhs: None,
            rhs: None,
            abs_residual: None,
            rel_residual: None,
            lhs_status: SeriesStatus::Singular,
            rhs_status: SeriesStatus::Singular,
            verdict: Verdict::Singular,
            notes: alloc::vec![format!("{reason}")],
            extras: Vec::new(),
        }
    }

    pub(crate) fn from_sides(
        identity: IdentityId,
        variant: Option<Variant>,
        point: &ParameterPoint,
        inputs: Vec<(String, HPComplex)>,
        sides: Sides,
        opts: &CheckOptions,
    ) -> Self {
        let abs = (&sides.lhs.value - &sides.rhs.value).abs();
        let rel = rel_diff(&sides.lhs.value, &sides.rhs.value);
        let converged = sides.lhs.status == SeriesStatus::Converged && sides.rhs.status == SeriesStatus::Converged;
        let verdict = if !converged {
            Verdict::Singular
        } else if identity.trust() == Trust::Derived {
            Verdict::Report
        } else if rel < Real::from_f64(opts.assert_tol, rel.prec()) {
            Verdict::Pass
        } else {
            Verdict::Fail
        };
        let mut notes = sides.notes;
        for (side, v) in [("lhs", &sides.lhs.value), ("rhs", &sides.rhs.value)] {
            if v.is_zero() {
                notes.push(format!("{side} vanishes exactly (a product factor is zero); read abs_residual"));
            }
        }
        ResidualRecord {
            identity,
            variant,
            point: point.clone(),
            inputs,
            lhs: Some(sides.lhs.value),
            rhs: Some(sides.rhs.value),
            abs_residual: Some(abs),
            rel_residual: Some(rel),
            lhs_status: sides.lhs.status,
            rhs_status: sides.rhs.status,
            verdict,
            notes,
            extras: sides.extras,
        }
    }
}

/// `expr` evaluated with its two slots interchanged. Callers form
/// `expr(x, y) + idem(expr, x, y)`; errors are tagged as coming from the
/// swapped assignment.
pub fn idem<X: ?Sized, T>(expr: impl Fn(&X, &X) -> Result<T>, x: &X, y: &X) -> Result<T> {
    expr(y, x).map_err(|e| Error::InAssignment { which: "swapped", inner: Box::new(e) })
}

/// `expr(x, y) + expr(y, x)` for series-valued expressions.
pub fn sum_with_idem<X: ?Sized>(
    expr: impl Fn(&X, &X) -> Result<SeriesResult>,
    x: &X,
    y: &X,
) -> Result<SeriesResult> {
    let direct = expr(x, y).map_err(|e| Error::InAssignment { which: "direct", inner: Box::new(e) })?;
    let swapped = idem(expr, x, y)?;
    Ok(combine(&direct, &swapped))
}

/// Quotient of infinite products over base `q^k`, with vanishing
/// denominator factors reported by label.
pub(crate) struct Products<'a> {
    pub q: &'a HPComplex,
    pub k: u32,
    pub policy: &'a TruncationPolicy,
}

impl Products<'_> {
    pub fn ratio(&self, num: &[(&str, HPComplex)], den: &[(&str, HPComplex)]) -> Result<SeriesResult> {
        let prec = self.q.prec();
        let mut n = SeriesResult::exact(HPComplex::one(prec), 0);
        for (_, a) in num {
            n = n.times(&qpoch_infinite(a, self.q, self.k, self.policy)?);
        }
        let mut d = SeriesResult::exact(HPComplex::one(prec), 0);
        for (label, a) in den {
            let r = qpoch_infinite(a, self.q, self.k, self.policy)?;
            if r.value.is_zero() {
                return Err(Error::Pole(format!("denominator factor ({label}; q^{})_inf vanishes", self.k)));
            }
            d = d.times(&r);
        }
        let value = n.value.checked_div(&d.value).expect("nonzero denominator");
        Ok(SeriesResult { value, ..n.times(&d) })
    }
}

pub(crate) fn div(a: &HPComplex, b: &HPComplex, what: &str) -> Result<HPComplex> {
    a.checked_div(b).ok_or_else(|| Error::DivisionByZero(String::from(what)))
}

pub(crate) fn scale(r: SeriesResult, c: &HPComplex) -> SeriesResult {
    SeriesResult { value: &r.value * c, ..r }
}

/// Runs one identity check at a point, with the variant ignored for
/// established identities. Continued fraction identities live in
/// [`crate::contfrac`] and are dispatched from there.
pub fn check(id: IdentityId, variant: Variant, p: &ParameterPoint, opts: &CheckOptions) -> Result<ResidualRecord> {
    match id {
        IdentityId::I4_2 | IdentityId::I4_3 | IdentityId::I4_4 | IdentityId::I4_5 => {
            check_bilateral_expansion(id, variant, p, opts)
        }
        IdentityId::I5_2 | IdentityId::I5_3 | IdentityId::I6_2 | IdentityId::I6_3 => {
            check_phi1_expansion(id, variant, p, opts)
        }
        IdentityId::I7_4 | IdentityId::I7_5 => crate::contfrac::check_cf_representation(id, variant, p, opts),
        _ => Err(Error::Usage(format!("identity {id} needs extra parameters; use its dedicated check"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn idem_swaps_and_is_an_involution() {
        let first = |x: &i64, _y: &i64| -> Result<i64> { Ok(*x) };
        assert_eq!(idem(first, &2, &3).unwrap(), 3);
        let sym = |x: &i64, y: &i64| -> Result<i64> { Ok(x + y) };
        assert_eq!(idem(sym, &2, &3).unwrap(), 5);
        let twice = idem(|x: &i64, y: &i64| idem(first, x, y), &2, &3).unwrap();
        assert_eq!(twice, 2);
    }

    #[test]
    fn idem_tags_failures() {
        let fail = |x: &i64, _y: &i64| -> Result<i64> {
            if *x == 3 {
                Err(Error::Pole("x = 3".into()))
            } else {
                Ok(*x)
            }
        };
        let e = idem(fail, &2, &3).unwrap_err();
        assert!(matches!(e, Error::InAssignment { which: "swapped", .. }));
        assert!(e.is_pole());
    }

    #[test]
    fn catalog() {
        assert_eq!(IdentityId::ALL.iter().filter(|i| i.trust() == Trust::Established).count(), 4);
        assert!(IdentityId::parse("7.3").unwrap_err().is_usage());
        assert_eq!(IdentityId::parse("6.2").unwrap(), IdentityId::I6_2);
    }
}
