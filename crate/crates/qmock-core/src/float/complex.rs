use alloc::format;
use alloc::string::String;
use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};

use super::Real;

/// Complex number with [`Real`] parts.
#[derive(Clone, PartialEq, Eq)]
pub struct HPComplex {
    pub re: Real,
    pub im: Real,
}

impl HPComplex {
    pub fn new(re: Real, im: Real) -> Self {
        HPComplex { re, im }
    }

    pub fn from_real(re: Real) -> Self {
        let im = Real::zero(re.prec());
        HPComplex { re, im }
    }

    pub fn zero(prec: u32) -> Self {
        Self::from_real(Real::zero(prec))
    }

    pub fn one(prec: u32) -> Self {
        Self::from_real(Real::one(prec))
    }

    pub fn from_i64(v: i64, prec: u32) -> Self {
        Self::from_real(Real::from_i64(v, prec))
    }

    pub fn from_f64(v: f64, prec: u32) -> Self {
        Self::from_real(Real::from_f64(v, prec))
    }

    pub fn prec(&self) -> u32 {
        self.re.prec().max(self.im.prec())
    }

    pub fn with_prec(&self, prec: u32) -> Self {
        HPComplex { re: self.re.with_prec(prec), im: self.im.with_prec(prec) }
    }

    /// Exact test against zero.
    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        HPComplex { re: self.re.clone(), im: -&self.im }
    }

    pub fn norm_sqr(&self) -> Real {
        &self.re.square() + &self.im.square()
    }

    pub fn abs(&self) -> Real {
        if self.im.is_zero() {
            return self.re.abs();
        }
        if self.re.is_zero() {
            return self.im.abs();
        }
        self.norm_sqr().sqrt().expect("nonnegative")
    }

    /// Cheap estimate of `log2|z|`; `-inf` for zero.
    pub fn log2_abs(&self) -> f64 {
        let a = self.re.log2_abs();
        let b = self.im.log2_abs();
        let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
        if lo == f64::NEG_INFINITY {
            return hi;
        }
        hi + 0.5 * libm::log2(1.0 + libm::exp2(2.0 * (lo - hi)))
    }

    pub fn scale(&self, k: &Real) -> Self {
        HPComplex { re: &self.re * k, im: &self.im * k }
    }

    pub fn mul_pow2(&self, k: i64) -> Self {
        HPComplex { re: self.re.mul_pow2(k), im: self.im.mul_pow2(k) }
    }

    pub fn square(&self) -> Self {
        self * self
    }

    pub fn checked_div(&self, other: &HPComplex) -> Option<HPComplex> {
        if other.is_zero() {
            return None;
        }
        if other.im.is_zero() {
            return Some(HPComplex {
                re: self.re.checked_div(&other.re)?,
                im: self.im.checked_div(&other.re)?,
            });
        }
        let d = other.norm_sqr();
        let num = self * &other.conj();
        Some(HPComplex { re: num.re.checked_div(&d)?, im: num.im.checked_div(&d)? })
    }

    pub fn recip(&self) -> Option<HPComplex> {
        HPComplex::one(self.prec()).checked_div(self)
    }

    /// Integer power; `None` for a negative power of zero.
    pub fn powi(&self, n: i64) -> Option<HPComplex> {
        let mut base = self.clone();
        let mut acc = HPComplex::one(self.prec());
        let mut k = n.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = base.square();
            }
        }
        if n < 0 {
            acc.recip()
        } else {
            Some(acc)
        }
    }

    pub fn exp(&self) -> HPComplex {
        let m = self.re.exp();
        if self.im.is_zero() {
            return HPComplex::from_real(m);
        }
        let (s, c) = self.im.sin_cos();
        HPComplex { re: &m * &c, im: &m * &s }
    }

    /// Principal logarithm, `None` at zero.
    pub fn ln(&self) -> Option<HPComplex> {
        if self.is_zero() {
            return None;
        }
        if self.im.is_zero() && self.re.is_positive() {
            return Some(HPComplex::from_real(self.re.ln()?));
        }
        let re = self.norm_sqr().ln()?.mul_pow2(-1);
        let im = Real::atan2(&self.im, &self.re);
        Some(HPComplex { re, im })
    }

    /// Principal branch `exp(alpha * Log z)`; integer exponents use exact powering.
    pub fn pow_real(&self, alpha: &Real) -> Option<HPComplex> {
        if let Some(n) = alpha.to_i64_exact() {
            if n.unsigned_abs() <= 1 << 20 {
                return self.powi(n);
            }
        }
        if self.is_zero() {
            return if alpha.is_positive() { Some(HPComplex::zero(self.prec())) } else { None };
        }
        let l = self.ln()?;
        Some(HPComplex { re: &l.re * alpha, im: &l.im * alpha }.exp())
    }

    /// Parse `re`, `re+imi`, `re-imi` or `imi`.
    pub fn parse(s: &str, prec: u32) -> Option<HPComplex> {
        let s = s.trim();
        let Some(body) = s.strip_suffix('i') else {
            return Some(HPComplex::from_real(Real::parse(s, prec)?));
        };
        // split at the last sign that does not belong to an exponent
        let bytes = body.as_bytes();
        let mut split = None;
        for i in (1..bytes.len()).rev() {
            if (bytes[i] == b'+' || bytes[i] == b'-') && !matches!(bytes[i - 1], b'e' | b'E') {
                split = Some(i);
                break;
            }
        }
        let imag = |t: &str| -> Option<Real> {
            match t {
                "" | "+" => Some(Real::one(prec)),
                "-" => Some(-Real::one(prec)),
                _ => Real::parse(t, prec),
            }
        };
        match split {
            Some(i) => Some(HPComplex { re: Real::parse(&body[..i], prec)?, im: imag(&body[i..])? }),
            None => Some(HPComplex { re: Real::zero(prec), im: imag(body)? }),
        }
    }

    pub fn to_sci_string(&self, digits: u32) -> String {
        if self.im.is_zero() {
            return self.re.to_sci_string(digits);
        }
        let im = self.im.to_sci_string(digits);
        if self.re.is_zero() {
            return format!("{im}i");
        }
        let re = self.re.to_sci_string(digits);
        if self.im.is_negative() {
            format!("{re}{im}i")
        } else {
            format!("{re}+{im}i")
        }
    }
}

impl fmt::Debug for HPComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_sci_string(self.re.natural_digits()))
    }
}

impl fmt::Display for HPComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision().map(|p| p as u32).unwrap_or_else(|| self.re.natural_digits());
        f.write_str(&self.to_sci_string(digits))
    }
}

impl Neg for HPComplex {
    type Output = HPComplex;
    fn neg(self) -> HPComplex {
        HPComplex { re: -self.re, im: -self.im }
    }
}

impl Neg for &HPComplex {
    type Output = HPComplex;
    fn neg(self) -> HPComplex {
        -self.clone()
    }
}

fn add_c(a: &HPComplex, b: &HPComplex) -> HPComplex {
    HPComplex { re: &a.re + &b.re, im: &a.im + &b.im }
}

fn sub_c(a: &HPComplex, b: &HPComplex) -> HPComplex {
    HPComplex { re: &a.re - &b.re, im: &a.im - &b.im }
}

fn mul_c(a: &HPComplex, b: &HPComplex) -> HPComplex {
    if a.im.is_zero() && b.im.is_zero() {
        let re = &a.re * &b.re;
        let im = Real::zero(re.prec());
        return HPComplex { re, im };
    }
    HPComplex {
        re: &(&a.re * &b.re) - &(&a.im * &b.im),
        im: &(&a.re * &b.im) + &(&a.im * &b.re),
    }
}

fn div_c(a: &HPComplex, b: &HPComplex) -> HPComplex {
    a.checked_div(b).expect("complex division by zero")
}

macro_rules! complex_binop {
    ($tr:ident, $m:ident, $f:ident) => {
        impl $tr<&HPComplex> for &HPComplex {
            type Output = HPComplex;
            fn $m(self, rhs: &HPComplex) -> HPComplex {
                $f(self, rhs)
            }
        }
        impl $tr<HPComplex> for HPComplex {
            type Output = HPComplex;
            fn $m(self, rhs: HPComplex) -> HPComplex {
                $f(&self, &rhs)
            }
        }
        impl $tr<&HPComplex> for HPComplex {
            type Output = HPComplex;
            fn $m(self, rhs: &HPComplex) -> HPComplex {
                $f(&self, rhs)
            }
        }
        impl $tr<HPComplex> for &HPComplex {
            type Output = HPComplex;
            fn $m(self, rhs: HPComplex) -> HPComplex {
                $f(self, &rhs)
            }
        }
    };
}

complex_binop!(Add, add, add_c);
complex_binop!(Sub, sub, sub_c);
complex_binop!(Mul, mul, mul_c);
complex_binop!(Div, div, div_c);

impl num_traits::Zero for HPComplex {
    fn zero() -> Self {
        HPComplex::zero(crate::DEFAULT_BITS)
    }
    fn is_zero(&self) -> bool {
        HPComplex::is_zero(self)
    }
}

impl num_traits::One for HPComplex {
    fn one() -> Self {
        HPComplex::one(crate::DEFAULT_BITS)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const P: u32 = 200;

    fn c(s: &str) -> HPComplex {
        HPComplex::parse(s, P).unwrap()
    }

    #[test]
    fn parse_forms() {
        assert_eq!(c("0.5+0.25i"), HPComplex::new(Real::parse("0.5", P).unwrap(), Real::parse("0.25", P).unwrap()));
        assert_eq!(c("1e-3-2e-4i").im, Real::parse("-2e-4", P).unwrap());
        assert_eq!(c("-i").im, -Real::one(P));
        assert_eq!(c("-0.75").re, Real::parse("-0.75", P).unwrap());
        assert!(HPComplex::parse("abc", P).is_none());
    }

    #[test]
    fn text_round_trip() {
        for s in ["1.5e-1-2e-3i", "3e0+4e0i", "2.5e-1", "7e-2i"] {
            assert_eq!(c(s).to_sci_string(50), s);
        }
    }

    #[test]
    fn exp_of_log() {
        let z = c("0.3+0.4i");
        let back = z.ln().unwrap().exp();
        assert!((&back - &z).log2_abs() < -190.0);
        assert_eq!(z.abs(), Real::parse("0.5", P).unwrap());
    }

    #[test]
    fn real_power_matches_integer_power() {
        let q = c("0.3+0.1i");
        let a = q.pow_real(&Real::parse("3", P).unwrap()).unwrap();
        let b = q.ln().unwrap().scale(&Real::from_i64(3, P)).exp();
        assert!((&a - &b).log2_abs() - a.log2_abs() < -180.0);
        let half = q.pow_real(&Real::parse("0.5", P).unwrap()).unwrap();
        assert!((&half.square() - &q).log2_abs() < -190.0);
    }
}
