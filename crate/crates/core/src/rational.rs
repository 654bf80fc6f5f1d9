//! Exact rational numbers.
//!
//! Values are [`num_rational::BigRational`], which keeps every fraction in
//! lowest terms with a positive denominator. This module adds the textual
//! forms used at the boundaries: the canonical `num/den` string, exact
//! parsing of fraction and decimal literals, and a rounded decimal rendering
//! for display.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

pub fn from_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Canonical `num/den` form. Integers keep their `/1`.
pub fn to_fraction_string(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Parses `a/b`, an integer, or a finite decimal such as `0.25` or `-1.5`.
///
/// Decimals are read as exact decimal fractions, so `0.1` is `1/10`.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let s = text.trim();
    let bad = || Error::RationalSyntax(text.to_string());
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((n, d)) = s.split_once('/') {
        let n = parse_int(n.trim()).ok_or_else(bad)?;
        let d = parse_int(d.trim()).ok_or_else(bad)?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(Rational::new(n, d));
    }
    let (negative, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    let all_digits = |t: &str| t.bytes().all(|b| b.is_ascii_digit());
    if !all_digits(int_part) || !all_digits(frac_part) {
        return Err(bad());
    }
    let digits = format!("{int_part}{frac_part}");
    let mut numer: BigInt = digits.parse().map_err(|_| bad())?;
    if negative {
        numer = -numer;
    }
    let denom = num_traits::pow(BigInt::from(10), frac_part.len());
    Ok(Rational::new(numer, denom))
}

fn parse_int(s: &str) -> Option<BigInt> {
    let body = s
        .strip_prefix('-')
        .or_else(|| s.strip_prefix('+'))
        .unwrap_or(s);
    if body.is_empty() || !body.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

/// Renders `q` in fixed notation rounded half-to-even to `sig` significant
/// digits. Zero renders as `0`.
pub fn to_decimal_string(q: &Rational, sig: usize) -> String {
    assert!(sig >= 1);
    if q.is_zero() {
        return "0".to_string();
    }
    let negative = q.is_negative();
    let a = q.abs();
    let ten = BigInt::from(10);

    // exponent e with 10^e <= a < 10^(e+1)
    let mut e = a.numer().to_string().len() as i64 - a.denom().to_string().len() as i64;
    loop {
        let lo = pow10(e);
        if a < lo {
            e -= 1;
        } else if a >= pow10(e + 1) {
            e += 1;
        } else {
            break;
        }
    }

    // scaled = a * 10^(sig-1-e), rounded half-even to an integer
    let shift = sig as i64 - 1 - e;
    let scaled = a * pow10(shift);
    let (quot, rem) = scaled.numer().div_rem(scaled.denom());
    let twice = rem * 2u32;
    let mut digits = match twice.cmp(scaled.denom()) {
        std::cmp::Ordering::Less => quot,
        std::cmp::Ordering::Greater => quot + 1u32,
        std::cmp::Ordering::Equal => {
            if quot.is_even() {
                quot
            } else {
                quot + 1u32
            }
        }
    };
    let mut shift = shift;
    if digits == num_traits::pow(ten.clone(), sig) {
        // rounding carried into a new leading digit
        digits /= ten;
        shift -= 1;
    }

    let mut s = digits.to_string();
    let out = if shift <= 0 {
        s.push_str(&"0".repeat((-shift) as usize));
        s
    } else {
        let shift = shift as usize;
        if s.len() <= shift {
            s = format!("{}{}", "0".repeat(shift - s.len() + 1), s);
        }
        let point = s.len() - shift;
        format!("{}.{}", &s[..point], &s[point..])
    };
    if negative {
        format!("-{out}")
    } else {
        out
    }
}

fn pow10(e: i64) -> Rational {
    let p = num_traits::pow(BigInt::from(10), e.unsigned_abs() as usize);
    if e >= 0 {
        Rational::from_integer(p)
    } else {
        Rational::new(BigInt::one(), p)
    }
}

/// Nearest `f64`, via the 17-significant-digit decimal rendering.
pub fn to_f64(q: &Rational) -> f64 {
    to_decimal_string(q, 17).parse().unwrap_or(f64::NAN)
}

pub(crate) fn is_positive(q: &Rational) -> bool {
    q.numer().sign() == Sign::Plus
}
