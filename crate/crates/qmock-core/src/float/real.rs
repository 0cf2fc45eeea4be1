use alloc::string::String;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

/// Binary floating point number with an arbitrary-length mantissa.
///
/// The value is `(-1)^neg * mant * 2^exp`. A nonzero value always carries
/// exactly `prec` mantissa bits; results are rounded to nearest, ties to even.
#[derive(Clone)]
pub struct Real {
    neg: bool,
    mant: BigUint,
    exp: i64,
    prec: u32,
}

/// Number of bits needed for `digits` significant decimal digits plus guard bits.
pub fn bits_for_digits(digits: u32) -> u32 {
    // log2(10) = 3.3219...; the integer ratio keeps this exact and no_std friendly
    (digits as u64 * 33_220).div_ceil(10_000) as u32 + 8
}

impl Real {
    pub fn zero(prec: u32) -> Self {
        Real { neg: false, mant: BigUint::zero(), exp: 0, prec }
    }

    pub fn one(prec: u32) -> Self {
        Self::from_i64(1, prec)
    }

    pub fn from_i64(v: i64, prec: u32) -> Self {
        Self::round_from(v < 0, BigUint::from(v.unsigned_abs()), 0, prec, false)
    }

    /// Exact conversion of a finite `f64` (rounded only if `prec < 53`).
    pub fn from_f64(v: f64, prec: u32) -> Self {
        assert!(v.is_finite(), "non-finite f64");
        if v == 0.0 {
            return Self::zero(prec);
        }
        let bits = v.to_bits();
        let neg = bits >> 63 == 1;
        let e = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (m, ex) = if e == 0 { (frac, -1074) } else { (frac | (1u64 << 52), e - 1075) };
        Self::round_from(neg, BigUint::from(m), ex, prec, false)
    }

    fn round_from(neg: bool, mut mant: BigUint, mut exp: i64, prec: u32, sticky: bool) -> Self {
        let bits = mant.bits();
        if bits == 0 {
            return Self::zero(prec);
        }
        let p = prec as u64;
        if bits > p {
            let sh = bits - p;
            let tz = mant.trailing_zeros().unwrap_or(0);
            let half = mant.bit(sh - 1);
            let rest = tz < sh - 1 || sticky;
            mant >>= sh;
            exp += sh as i64;
            if half && (rest || mant.bit(0)) {
                mant += 1u32;
                if mant.bits() > p {
                    mant >>= 1u32;
                    exp += 1;
                }
            }
        } else if bits < p {
            let sh = p - bits;
            mant <<= sh;
            exp -= sh as i64;
        }
        Real { neg, mant, exp, prec }
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn with_prec(&self, prec: u32) -> Self {
        Self::round_from(self.neg, self.mant.clone(), self.exp, prec, false)
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.neg
    }

    pub fn is_positive(&self) -> bool {
        !self.neg && !self.is_zero()
    }

    pub fn abs(&self) -> Self {
        let mut r = self.clone();
        r.neg = false;
        r
    }

    /// Position of the leading bit: `2^(top-1) <= |x| < 2^top`.
    fn top(&self) -> i64 {
        self.exp + self.mant.bits() as i64
    }

    /// Multiplication by `2^k`, exact.
    pub fn mul_pow2(&self, k: i64) -> Self {
        let mut r = self.clone();
        if !r.is_zero() {
            r.exp += k;
        }
        r
    }

    /// Cheap estimate of `log2|x|`; `-inf` for zero.
    pub fn log2_abs(&self) -> f64 {
        if self.is_zero() {
            return f64::NEG_INFINITY;
        }
        let bits = self.mant.bits();
        let take = bits.min(60);
        let head = (&self.mant >> (bits - take)).to_u64().unwrap_or(1) as f64;
        libm::log2(head) + (self.exp + (bits - take) as i64) as f64
    }

    /// `2^v` from an `f64` exponent, without leaving the `Real` range.
    pub fn exp2_approx(v: f64, prec: u32) -> Real {
        if v == f64::NEG_INFINITY {
            return Real::zero(prec);
        }
        let fl = libm::floor(v);
        Real::from_f64(libm::exp2(v - fl), prec).mul_pow2(fl as i64)
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let bits = self.mant.bits();
        let take = bits.min(60);
        let head = (&self.mant >> (bits - take)).to_u64().unwrap_or(0) as f64;
        let e = self.exp + (bits - take) as i64;
        let v = libm::ldexp(head, e.clamp(-2000, 2000) as i32);
        if self.neg {
            -v
        } else {
            v
        }
    }

    /// The value as an integer when it is one and fits in `i64`.
    pub fn to_i64_exact(&self) -> Option<i64> {
        if self.is_zero() {
            return Some(0);
        }
        let m = if self.exp >= 0 {
            if self.top() > 63 {
                return None;
            }
            &self.mant << (self.exp as u64)
        } else {
            let sh = (-self.exp) as u64;
            if self.mant.trailing_zeros().unwrap_or(0) < sh {
                return None;
            }
            &self.mant >> sh
        };
        let v = m.to_i64()?;
        Some(if self.neg { -v } else { v })
    }

    /// Nearest integer (ties away from zero) as `i64`, if in range.
    pub fn round_i64(&self) -> Option<i64> {
        let half = Real::from_f64(0.5, self.prec.max(64));
        let shifted = if self.neg { self - &half } else { self + &half };
        shifted.trunc_i64()
    }

    fn trunc_i64(&self) -> Option<i64> {
        if self.is_zero() {
            return Some(0);
        }
        if self.top() > 63 {
            return None;
        }
        let m = if self.exp >= 0 {
            &self.mant << (self.exp as u64)
        } else {
            &self.mant >> ((-self.exp) as u64)
        };
        let v = m.to_i64()?;
        Some(if self.neg { -v } else { v })
    }

    fn cmp_abs(&self, other: &Real) -> Ordering {
        match (self.is_zero(), other.is_zero()) {
            (true, true) => return Ordering::Equal,
            (true, false) => return Ordering::Less,
            (false, true) => return Ordering::Greater,
            _ => {}
        }
        match self.top().cmp(&other.top()) {
            Ordering::Equal => {}
            o => return o,
        }
        let e = self.exp.min(other.exp);
        let a = &self.mant << ((self.exp - e) as u64);
        let b = &other.mant << ((other.exp - e) as u64);
        a.cmp(&b)
    }

    fn add_signed(&self, other: &Real, flip: bool) -> Real {
        let prec = self.prec.max(other.prec);
        let oneg = other.neg ^ flip;
        if other.is_zero() {
            return self.with_prec(prec);
        }
        if self.is_zero() {
            let mut r = other.with_prec(prec);
            r.neg = oneg;
            return r;
        }
        let guard = prec as i64 + 3;
        if self.top() > other.top() + guard {
            return self.with_prec(prec);
        }
        if other.top() > self.top() + guard {
            let mut r = other.with_prec(prec);
            r.neg = oneg;
            return r;
        }
        let e = self.exp.min(other.exp);
        let a = &self.mant << ((self.exp - e) as u64);
        let b = &other.mant << ((other.exp - e) as u64);
        if self.neg == oneg {
            Self::round_from(self.neg, a + b, e, prec, false)
        } else {
            match a.cmp(&b) {
                Ordering::Equal => Self::zero(prec),
                Ordering::Greater => Self::round_from(self.neg, a - b, e, prec, false),
                Ordering::Less => Self::round_from(oneg, b - a, e, prec, false),
            }
        }
    }

    fn mul_ref(&self, other: &Real) -> Real {
        let prec = self.prec.max(other.prec);
        Self::round_from(self.neg ^ other.neg, &self.mant * &other.mant, self.exp + other.exp, prec, false)
    }

    /// Quotient, or `None` when dividing by zero.
    pub fn checked_div(&self, other: &Real) -> Option<Real> {
        if other.is_zero() {
            return None;
        }
        let prec = self.prec.max(other.prec);
        if self.is_zero() {
            return Some(Self::zero(prec));
        }
        let want = prec as i64 + 3 + other.mant.bits() as i64 - self.mant.bits() as i64;
        let s = want.max(0) as u64;
        let num = &self.mant << s;
        let (q, r) = num.div_rem(&other.mant);
        Some(Self::round_from(
            self.neg ^ other.neg,
            q,
            self.exp - other.exp - s as i64,
            prec,
            !r.is_zero(),
        ))
    }

    pub fn recip(&self) -> Option<Real> {
        Real::one(self.prec).checked_div(self)
    }

    pub fn square(&self) -> Real {
        self.mul_ref(self)
    }

    /// Square root of a nonnegative value.
    pub fn sqrt(&self) -> Option<Real> {
        if self.neg {
            return None;
        }
        if self.is_zero() {
            return Some(self.clone());
        }
        let p = self.prec as i64;
        let bits = self.mant.bits() as i64;
        let mut s = (2 * p + 4 - bits).max(0);
        if (self.exp - s).rem_euclid(2) != 0 {
            s += 1;
        }
        let n = &self.mant << (s as u64);
        let r = n.sqrt();
        let exact = &r * &r == n;
        Some(Self::round_from(false, r, (self.exp - s) / 2, self.prec, !exact))
    }

    /// Integer power by repeated squaring.
    pub fn powi(&self, n: i64) -> Option<Real> {
        let mut base = self.clone();
        let mut acc = Real::one(self.prec);
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

    /// Correctly rounded value of a decimal string such as `-1.25e-3`.
    pub fn parse(s: &str, prec: u32) -> Option<Real> {
        let s = s.trim();
        let (neg, body) = match s.as_bytes().first()? {
            b'-' => (true, &s[1..]),
            b'+' => (false, &s[1..]),
            _ => (false, s),
        };
        let (num, exp_part) = match body.find(['e', 'E']) {
            Some(i) => (&body[..i], Some(&body[i + 1..])),
            None => (body, None),
        };
        let mut e10: i64 = match exp_part {
            Some(t) => t.parse().ok()?,
            None => 0,
        };
        let (ip, fp) = match num.find('.') {
            Some(i) => (&num[..i], &num[i + 1..]),
            None => (num, ""),
        };
        if ip.is_empty() && fp.is_empty() {
            return None;
        }
        let mut m = BigUint::zero();
        let ten = BigUint::from(10u32);
        for c in ip.bytes().chain(fp.bytes()) {
            if !c.is_ascii_digit() {
                return None;
            }
            m = m * &ten + BigUint::from((c - b'0') as u32);
        }
        e10 -= fp.len() as i64;
        if m.is_zero() {
            return Some(Self::zero(prec));
        }
        if e10.unsigned_abs() > 100_000 {
            return None;
        }
        if e10 >= 0 {
            let m = m * ten.pow(e10 as u32);
            return Some(Self::round_from(neg, m, 0, prec, false));
        }
        let d = ten.pow((-e10) as u32);
        let want = prec as i64 + 3 + d.bits() as i64 - m.bits() as i64;
        let sh = want.max(0) as u64;
        let (q, r) = (m << sh).div_rem(&d);
        Some(Self::round_from(neg, q, -(sh as i64), prec, !r.is_zero()))
    }

    /// Scientific notation with `digits` significant digits, trailing zeros trimmed.
    pub fn to_sci_string(&self, digits: u32) -> String {
        use alloc::format;
        if self.is_zero() {
            return String::from("0");
        }
        let digits = digits.max(1);
        let ten = BigUint::from(10u32);
        let lo = ten.pow(digits - 1);
        let hi = &lo * &ten;
        // decimal exponent estimate, corrected below
        let mut t = libm::floor(self.log2_abs() * core::f64::consts::LOG10_2) as i64;
        let mut d;
        loop {
            let k = digits as i64 - 1 - t;
            let mut num = self.mant.clone();
            let mut den = BigUint::one();
            if self.exp >= 0 {
                num <<= self.exp as u64;
            } else {
                den <<= (-self.exp) as u64;
            }
            if k >= 0 {
                num *= ten.pow(k as u32);
            } else {
                den *= ten.pow((-k) as u32);
            }
            let (q, r) = num.div_rem(&den);
            let twice = r << 1u32;
            d = match twice.cmp(&den) {
                Ordering::Greater => q + 1u32,
                Ordering::Equal if q.bit(0) => q + 1u32,
                _ => q,
            };
            if d >= hi {
                t += 1;
            } else if d < lo {
                t -= 1;
            } else {
                break;
            }
        }
        let ds = d.to_str_radix(10);
        let (head, tail) = ds.split_at(1);
        let tail = tail.trim_end_matches('0');
        let sign = if self.neg { "-" } else { "" };
        if tail.is_empty() {
            format!("{sign}{head}e{t}")
        } else {
            format!("{sign}{head}.{tail}e{t}")
        }
    }

    /// Decimal digits that faithfully represent this precision.
    pub fn natural_digits(&self) -> u32 {
        ((self.prec.saturating_sub(8)) as u64 * 10_000 / 33_220).max(1) as u32
    }
}

impl PartialEq for Real {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Real {}

impl PartialOrd for Real {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Real {
    fn cmp(&self, other: &Self) -> Ordering {
        let sa = if self.is_zero() { 0 } else if self.neg { -1 } else { 1 };
        let sb = if other.is_zero() { 0 } else if other.neg { -1 } else { 1 };
        if sa != sb {
            return sa.cmp(&sb);
        }
        let c = self.cmp_abs(other);
        if sa < 0 {
            c.reverse()
        } else {
            c
        }
    }
}

impl fmt::Debug for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_sci_string(self.natural_digits()))
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision().map(|p| p as u32).unwrap_or_else(|| self.natural_digits());
        f.write_str(&self.to_sci_string(digits))
    }
}

impl Neg for Real {
    type Output = Real;
    fn neg(mut self) -> Real {
        if !self.is_zero() {
            self.neg = !self.neg;
        }
        self
    }
}

impl Neg for &Real {
    type Output = Real;
    fn neg(self) -> Real {
        -self.clone()
    }
}

macro_rules! real_binop {
    ($tr:ident, $m:ident, |$a:ident, $b:ident| $body:expr) => {
        impl $tr<&Real> for &Real {
            type Output = Real;
            fn $m(self, rhs: &Real) -> Real {
                let ($a, $b) = (self, rhs);
                $body
            }
        }
        impl $tr<Real> for Real {
            type Output = Real;
            fn $m(self, rhs: Real) -> Real {
                let ($a, $b) = (&self, &rhs);
                $body
            }
        }
        impl $tr<&Real> for Real {
            type Output = Real;
            fn $m(self, rhs: &Real) -> Real {
                let ($a, $b) = (&self, rhs);
                $body
            }
        }
        impl $tr<Real> for &Real {
            type Output = Real;
            fn $m(self, rhs: Real) -> Real {
                let ($a, $b) = (self, &rhs);
                $body
            }
        }
    };
}

real_binop!(Add, add, |a, b| a.add_signed(b, false));
real_binop!(Sub, sub, |a, b| a.add_signed(b, true));
real_binop!(Mul, mul, |a, b| a.mul_ref(b));
real_binop!(Div, div, |a, b| a.checked_div(b).expect("division by zero"));

#[cfg(test)]
mod tests {
    use super::*;

    const P: u32 = 200;

    fn r(s: &str) -> Real {
        Real::parse(s, P).unwrap()
    }

    #[test]
    fn exact_small_arithmetic() {
        assert_eq!(r("0.5") * r("0.5"), r("0.25"));
        assert_eq!(r("1") - r("0.375"), r("0.625"));
        assert_eq!(r("3") / r("4"), r("0.75"));
        assert_eq!(r("2").sqrt().unwrap().square().to_sci_string(50), "2e0");
    }

    #[test]
    fn decimal_round_trip() {
        for s in ["1.2345678901234567890123456789e-7", "-3.3e120", "7e0", "-4.5e-300"] {
            let x = r(s);
            assert_eq!(x.to_sci_string(40), s);
        }
    }

    #[test]
    fn third_times_three() {
        let third = r("1") / r("3");
        let back = &third * &r("3");
        assert!((back - r("1")).log2_abs() < -(P as f64) + 2.0);
    }

    #[test]
    fn ties_round_to_even() {
        let x = Real::round_from(false, BigUint::from(0b1011u32), 0, 3, false);
        assert_eq!(x.to_i64_exact(), Some(12));
        let y = Real::round_from(false, BigUint::from(0b1001u32), 0, 3, false);
        assert_eq!(y.to_i64_exact(), Some(8));
    }

    #[test]
    fn bits_for_fifty_digits() {
        assert_eq!(bits_for_digits(50), 175);
    }
}
