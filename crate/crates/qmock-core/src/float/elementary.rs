//! Elementary functions on [`Real`], evaluated with guard bits and rounded once.

use super::Real;

const GUARD: u32 = 40;

fn below(term: &Real, sum: &Real, wp: u32) -> bool {
    term.is_zero() || term.log2_abs() < sum.log2_abs() - wp as f64 - 2.0
}

/// `atanh(y) = y + y^3/3 + y^5/5 + ...` for small `|y|`.
fn atanh_series(y: &Real, wp: u32) -> Real {
    let y2 = y.square();
    let mut pw = y.clone();
    let mut sum = y.clone();
    let mut k = 1i64;
    loop {
        pw = &pw * &y2;
        let term = &pw / &Real::from_i64(2 * k + 1, wp);
        sum = &sum + &term;
        if below(&term, &sum, wp) {
            return sum;
        }
        k += 1;
    }
}

/// `atan(y) = y - y^3/3 + y^5/5 - ...` for small `|y|`.
fn atan_series(y: &Real, wp: u32) -> Real {
    let y2 = y.square();
    let mut pw = y.clone();
    let mut sum = y.clone();
    let mut k = 1i64;
    loop {
        pw = -(&pw * &y2);
        let term = &pw / &Real::from_i64(2 * k + 1, wp);
        sum = &sum + &term;
        if below(&term, &sum, wp) {
            return sum;
        }
        k += 1;
    }
}

pub fn ln2(prec: u32) -> Real {
    let wp = prec + GUARD;
    let third = Real::one(wp) / Real::from_i64(3, wp);
    atanh_series(&third, wp).mul_pow2(1).with_prec(prec)
}

pub fn pi(prec: u32) -> Real {
    let wp = prec + GUARD;
    let one = Real::one(wp);
    let a = atan_series(&(&one / &Real::from_i64(5, wp)), wp).mul_pow2(4);
    let b = atan_series(&(&one / &Real::from_i64(239, wp)), wp).mul_pow2(2);
    (a - b).with_prec(prec)
}

impl Real {
    /// Natural logarithm of a positive value.
    pub fn ln(&self) -> Option<Real> {
        if !self.is_positive() {
            return None;
        }
        let prec = self.prec();
        let wp = prec + GUARD;
        let x = self.with_prec(wp);
        // x = m * 2^e with m in [1/sqrt2, sqrt2)
        let mut e = libm::floor(x.log2_abs()) as i64 + 1;
        let mut m = x.mul_pow2(-e);
        let lo = Real::from_f64(core::f64::consts::FRAC_1_SQRT_2, wp);
        if m < lo {
            m = m.mul_pow2(1);
            e -= 1;
        }
        let one = Real::one(wp);
        let y = (&m - &one) / (&m + &one);
        let s = atanh_series(&y, wp).mul_pow2(1);
        let r = s + ln2(wp) * Real::from_i64(e, wp);
        Some(r.with_prec(prec))
    }

    pub fn exp(&self) -> Real {
        let prec = self.prec();
        if self.is_zero() {
            return Real::one(prec);
        }
        const HALVINGS: i64 = 10;
        let wp = prec + GUARD + HALVINGS as u32;
        let x = self.with_prec(wp);
        let l2 = ln2(wp);
        let n = libm::round(x.to_f64() / core::f64::consts::LN_2) as i64;
        let r = (&x - &(&l2 * &Real::from_i64(n, wp))).mul_pow2(-HALVINGS);
        let mut term = Real::one(wp);
        let mut sum = Real::one(wp);
        let mut k = 1i64;
        loop {
            term = &(&term * &r) / &Real::from_i64(k, wp);
            sum = &sum + &term;
            if below(&term, &sum, wp) {
                break;
            }
            k += 1;
        }
        for _ in 0..HALVINGS {
            sum = sum.square();
        }
        sum.mul_pow2(n).with_prec(prec)
    }

    /// `(sin x, cos x)`.
    pub fn sin_cos(&self) -> (Real, Real) {
        let prec = self.prec();
        if self.is_zero() {
            return (Real::zero(prec), Real::one(prec));
        }
        let extra = self.log2_abs().max(0.0) as u32;
        let wp = prec + GUARD + extra;
        let x = self.with_prec(wp);
        let half_pi = pi(wp).mul_pow2(-1);
        let k = libm::round(x.to_f64() / core::f64::consts::FRAC_PI_2) as i64;
        let r = &x - &(&half_pi * &Real::from_i64(k, wp));
        let r2 = r.square();
        let mut s_term = r.clone();
        let mut s = r.clone();
        let mut c_term = Real::one(wp);
        let mut c = Real::one(wp);
        let mut j = 1i64;
        loop {
            c_term = -(&(&c_term * &r2) / &Real::from_i64((2 * j - 1) * (2 * j), wp));
            s_term = -(&(&s_term * &r2) / &Real::from_i64((2 * j) * (2 * j + 1), wp));
            c = &c + &c_term;
            s = &s + &s_term;
            if below(&c_term, &c, wp) && below(&s_term, &Real::one(wp), wp) {
                break;
            }
            j += 1;
        }
        let (sn, cs) = match k.rem_euclid(4) {
            0 => (s, c),
            1 => (c, -s),
            2 => (-s, -c),
            _ => (-c, s),
        };
        (sn.with_prec(prec), cs.with_prec(prec))
    }

    pub fn atan(&self) -> Real {
        let prec = self.prec();
        if self.is_zero() {
            return self.clone();
        }
        let wp = prec + GUARD;
        let one = Real::one(wp);
        let x = self.with_prec(wp);
        if x.abs() > one {
            let hp = pi(wp).mul_pow2(-1);
            let inv = (&one / &x).atan();
            let r = if x.is_negative() { -hp - inv } else { hp - inv };
            return r.with_prec(prec);
        }
        // atan x = 2 atan(x / (1 + sqrt(1 + x^2)))
        let mut y = x;
        for _ in 0..3 {
            let root = (&one + &y.square()).sqrt().expect("positive");
            y = &y / &(&one + &root);
        }
        atan_series(&y, wp).mul_pow2(3).with_prec(prec)
    }

    /// Angle of the point `(x, y)` in `(-pi, pi]`.
    pub fn atan2(y: &Real, x: &Real) -> Real {
        let prec = y.prec().max(x.prec());
        if x.is_zero() {
            if y.is_zero() {
                return Real::zero(prec);
            }
            let hp = pi(prec).mul_pow2(-1);
            return if y.is_negative() { -hp } else { hp };
        }
        let base = (y / x).atan();
        if x.is_positive() {
            base
        } else if y.is_negative() {
            base - pi(prec)
        } else {
            base + pi(prec)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const P: u32 = 200;

    fn r(s: &str) -> Real {
        Real::parse(s, P).unwrap()
    }

    fn close(a: &Real, b: &str) {
        let d = (a - &r(b)).log2_abs() - r(b).log2_abs();
        assert!(d < -150.0, "{a} vs {b}: {d}");
    }

    #[test]
    fn constants() {
        close(&pi(P), "3.14159265358979323846264338327950288419716939937510582097494");
        close(&ln2(P), "0.693147180559945309417232121458176568075500134360255254120680");
    }

    #[test]
    fn exp_ln_values() {
        close(&r("1").exp(), "2.71828182845904523536028747135266249775724709369995957496697");
        close(&r("0.3").ln().unwrap(), "-1.20397280432593599262274621776183850295361093080602");
        close(&r("-7.25").exp().ln().unwrap(), "-7.25");
    }

    #[test]
    fn trig_values() {
        let (s, c) = r("1").sin_cos();
        close(&s, "0.841470984807896506652502321630298999622563060798371065672751");
        close(&c, "0.540302305868139717400936607442976603732310420617922227670097");
        close(&r("0.5").atan(), "0.463647609000806116214256231461214402028537054286120263810933");
        close(&Real::atan2(&r("-1"), &r("-1")), "-2.35619449019234492884698253745962716314787704953132936573121");
    }
}
