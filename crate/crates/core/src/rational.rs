//! Exact rational scalars.
//!
//! Everything in this crate is computed over [`Rational`], an
//! arbitrary-precision fraction kept in canonical form (positive
//! denominator, coprime numerator). No floating point is involved in any
//! identity check.

use std::cmp::Ordering;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Integer-valued rational.
pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// `num / den` in canonical form. Panics when `den == 0`; use [`checked_div`]
/// for data-dependent denominators.
pub fn frac(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Division that reports a vanishing denominator instead of panicking.
///
/// `what` names the denominator expression so a degenerate parameter set can
/// be traced back to the formula that hit it.
pub fn checked_div(num: &Rational, den: &Rational, what: &str) -> Result<Rational> {
    if den.is_zero() {
        return Err(Error::DegenerateParameters(vec![what.to_string()]));
    }
    Ok(num / den)
}

/// `(-1)^k` as a rational.
pub fn sign(k: usize) -> Rational {
    if k.is_even() {
        Rational::one()
    } else {
        -Rational::one()
    }
}

pub fn factorial(n: usize) -> Rational {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= BigInt::from(i);
    }
    Rational::from_integer(acc)
}

/// Parse `"p/q"`, `"p"` or a finite decimal such as `"-0.25"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not an exact rational: {s:?}"));
    if let Some((int_part, frac_part)) = s.split_once('.') {
        if frac_part.is_empty() || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = int_part.starts_with('-');
        let whole = if int_part.is_empty() || int_part == "-" || int_part == "+" {
            BigInt::zero()
        } else {
            BigInt::from_str(int_part).map_err(|_| bad())?
        };
        let digits = BigInt::from_str(frac_part).map_err(|_| bad())?;
        let scale = BigInt::from(10u32).pow(frac_part.len() as u32);
        let tail = Rational::new(digits, scale);
        let whole = Rational::from_integer(whole.abs());
        let v = whole + tail;
        return Ok(if negative { -v } else { v });
    }
    let r = Rational::from_str(s).map_err(|_| bad())?;
    Ok(r)
}

/// Canonical `"p/q"` rendering (`"5"` for integers, `"-1/3"` for negatives).
pub fn to_exact_string(r: &Rational) -> String {
    r.to_string()
}

/// Decimal rendering with `digits` places after the point, rounded half away
/// from zero. Exact: no intermediate floating point.
pub fn to_decimal_string(r: &Rational, digits: usize) -> String {
    let scale = BigInt::from(10u32).pow(digits as u32);
    let scaled = r.abs() * Rational::from_integer(scale.clone());
    let floor = scaled.floor().to_integer();
    let rem = &scaled - Rational::from_integer(floor.clone());
    let rounded = if rem * int(2) >= Rational::one() {
        floor + BigInt::one()
    } else {
        floor
    };
    let (whole, tail) = rounded.div_rem(&scale);
    let mut out = String::new();
    if r.is_negative() && !(whole.is_zero() && tail.is_zero()) {
        out.push('-');
    }
    out.push_str(&whole.to_string());
    if digits > 0 {
        let t = tail.to_string();
        out.push('.');
        out.push_str(&"0".repeat(digits - t.len()));
        out.push_str(&t);
    }
    out
}

/// `|a|` compared to `|b|` by exact cross-multiplication.
pub fn cmp_abs(a: &Rational, b: &Rational) -> Ordering {
    let lhs = a.numer().abs() * b.denom();
    let rhs = b.numer().abs() * a.denom();
    lhs.cmp(&rhs)
}

/// True when `r` is an integer `<= 0`; returns `-r` in that case.
pub fn nonpositive_integer(r: &Rational) -> Option<usize> {
    if r.is_integer() && !r.is_positive() {
        let v = -r.to_integer();
        usize::try_from(&v).ok()
    } else {
        None
    }
}
