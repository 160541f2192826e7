//! Exact rational arithmetic helpers shared across the crate.
//!
//! All distribution math runs on `Rat` (arbitrary-precision rationals);
//! floats appear only at the reporting boundary and in the normal-CDF and
//! truncated-Poisson evaluations. Comparisons against square-root-shaped
//! bounds are decided exactly by squaring, never through floats.

use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::Error;

/// Arbitrary-precision rational number.
pub type Rat = num_rational::BigRational;

/// `n` as a rational.
pub fn rat_i(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// `n/d` as a rational. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Fractional part `<x> = x - floor(x)`, in `[0, 1)` with floor toward
/// minus infinity, so `x = floor(x) + <x>` holds for negative x too.
pub fn frac_part(x: &Rat) -> Rat {
    x - x.floor()
}

/// `r^e` for small nonnegative exponents.
pub fn pow_u(r: &Rat, e: u32) -> Rat {
    let mut acc = rat_i(1);
    for _ in 0..e {
        acc *= r;
    }
    acc
}

/// Parses an exact rational from `"a"` or `"a/b"` decimal-integer strings.
/// Decimal-point and exponent notations are rejected: they would silently
/// round, and every consumer of this parser needs exact inputs.
pub fn parse_rat(s: &str) -> Result<Rat, Error> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::InvalidParam("empty rational".into()));
    }
    if s.contains(['.', 'e', 'E']) {
        return Err(Error::InvalidParam(format!(
            "\"{s}\": decimal notation rejected, write an exact fraction like 2/5"
        )));
    }
    let (ns, ds) = match s.split_once('/') {
        Some((a, b)) => (a, b),
        None => (s, "1"),
    };
    let n = BigInt::from_str(ns)
        .map_err(|_| Error::InvalidParam(format!("\"{s}\": bad numerator")))?;
    let d = BigInt::from_str(ds)
        .map_err(|_| Error::InvalidParam(format!("\"{s}\": bad denominator")))?;
    if d.is_zero() {
        return Err(Error::InvalidParam(format!("\"{s}\": zero denominator")));
    }
    Ok(Rat::new(n, d))
}

/// Rounds to the nearest f64 (within ~2 ulp) without overflowing on huge
/// numerators or denominators: the quotient is pre-shifted to ~64 bits and
/// the binary exponent is re-applied in chunks so subnormal magnitudes
/// survive.
pub fn to_f64(r: &Rat) -> f64 {
    if r.numer().is_zero() {
        return 0.0;
    }
    let mut n = r.numer().abs();
    let mut d = r.denom().clone();
    let extra: i64 = 64 - (n.bits() as i64 - d.bits() as i64);
    if extra > 0 {
        n <<= extra as usize;
    } else {
        d <<= (-extra) as usize;
    }
    let q = (&n / &d).to_f64().unwrap_or(f64::MAX);
    let mut val = q;
    let mut e = -extra;
    while e > 512 {
        val *= 2f64.powi(512);
        e -= 512;
    }
    while e < -512 {
        val *= 2f64.powi(-512);
        e += 512;
    }
    val *= 2f64.powi(e as i32);
    if r.is_negative() {
        -val
    } else {
        val
    }
}

/// Decimal rendering of an exact rational, truncated toward zero after
/// `max_frac_digits` fractional digits; exact (with trailing zeros trimmed)
/// whenever the expansion terminates within that budget.
pub fn decimal_string(r: &Rat, max_frac_digits: usize) -> String {
    let neg = r.is_negative();
    let num = r.numer().abs();
    let den = r.denom().clone();
    let scale = BigInt::from(10u8).pow(max_frac_digits as u32);
    let (scaled, rem) = (&num * &scale).div_rem(&den);
    let digits = scaled.to_string();
    let digits = if digits.len() <= max_frac_digits {
        format!("{}{}", "0".repeat(max_frac_digits - digits.len() + 1), digits)
    } else {
        digits
    };
    let (int_part, frac_part) = digits.split_at(digits.len() - max_frac_digits);
    let frac_part = if rem.is_zero() {
        frac_part.trim_end_matches('0')
    } else {
        frac_part
    };
    let mut out = String::new();
    if neg && (!scaled.is_zero() || !rem.is_zero()) {
        out.push('-');
    }
    out.push_str(int_part);
    if !frac_part.is_empty() {
        out.push('.');
        out.push_str(frac_part);
    }
    out
}

/// Exact test of `x <= sqrt(rad) + tail` for rationals with `rad >= 0`.
pub fn le_sqrt_form(x: &Rat, rad: &Rat, tail: &Rat) -> bool {
    let d = x - tail;
    if d <= Rat::zero() {
        return true;
    }
    &d * &d <= *rad
}

/// Exact test of `sqrt(r1) + t1 <= sqrt(r2) + t2` for rationals with
/// `r1, r2 >= 0`, via repeated squaring of nonnegative sides.
pub fn sqrt_form_le(r1: &Rat, t1: &Rat, r2: &Rat, t2: &Rat) -> bool {
    let d = t2 - t1;
    if d >= Rat::zero() {
        // sqrt(r1) <= sqrt(r2) + d
        let lhs = r1 - r2 - &d * &d;
        if lhs <= Rat::zero() {
            return true;
        }
        &lhs * &lhs <= rat_i(4) * &d * &d * r2
    } else {
        // sqrt(r1) + |d| <= sqrt(r2)
        let rhs = r2 - r1 - &d * &d;
        if rhs < Rat::zero() {
            return false;
        }
        rat_i(4) * &d * &d * r1 <= &rhs * &rhs
    }
}

/// Float value of `sqrt(rad) + tail`.
pub fn sqrt_form_value(rad: &Rat, tail: &Rat) -> f64 {
    to_f64(rad).sqrt() + to_f64(tail)
}
