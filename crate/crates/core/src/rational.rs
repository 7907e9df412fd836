//! Exact rational scalars.
//!
//! Every quantity the solvers touch (intensity weights, efficiency scores,
//! slacks, targets) is a [`Rational`] backed by arbitrary-precision integers,
//! so equalities such as `4/9 + 1/3 + 2/9 = 1` hold exactly.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

/// Builds `num/den` in canonical form (reduced, positive denominator).
pub fn rational(num: i64, den: i64) -> Result<Rational> {
    if den == 0 {
        return Err(Error::ZeroDenominator);
    }
    Ok(Rational::new(BigInt::from(num), BigInt::from(den)))
}

/// Integer-valued rational.
pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// `num/den` for literal constants known to be valid.
///
/// Panics on a zero denominator.
pub fn frac(num: i64, den: i64) -> Rational {
    rational(num, den).expect("literal fraction with zero denominator")
}

pub fn is_integral(value: &Rational) -> bool {
    value.denom().is_one()
}

/// The value as an `i64` when it is an integer that fits.
pub fn to_i64(value: &Rational) -> Option<i64> {
    if is_integral(value) {
        value.numer().to_i64()
    } else {
        None
    }
}

/// Canonical `num/den` text. Integers keep the `/1` suffix so that every exact
/// value has the same shape in reports.
pub fn fraction_string(value: &Rational) -> String {
    format!("{}/{}", value.numer(), value.denom())
}

/// Compact text: integers without the denominator, otherwise `num/den`.
pub fn compact_string(value: &Rational) -> String {
    if is_integral(value) {
        value.numer().to_string()
    } else {
        fraction_string(value)
    }
}

/// Parses `7`, `-3`, `5/2` or a terminating decimal such as `2.25`, exactly.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    if text.is_empty() {
        return None;
    }
    if let Some((num, den)) = text.split_once('/') {
        let num: BigInt = num.trim().parse().ok()?;
        let den: BigInt = den.trim().parse().ok()?;
        if den.is_zero() {
            return None;
        }
        return Some(Rational::new(num, den));
    }
    if let Some((whole, fractional)) = text.split_once('.') {
        if fractional.is_empty() || !fractional.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let negative = whole.starts_with('-');
        let whole_digits = whole.trim_start_matches(['-', '+']);
        if !whole_digits.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let digits: BigInt = format!("{whole_digits}{fractional}").parse().ok()?;
        let scale = num_traits::pow(BigInt::from(10), fractional.len());
        let value = Rational::new(digits, scale);
        return Some(if negative { -value } else { value });
    }
    let value: BigInt = text.parse().ok()?;
    Some(Rational::from_integer(value))
}

/// Display-only decimal rendering with `digits` significant digits
/// (round half away from zero). Never used for comparisons.
pub fn decimal_string(value: &Rational, digits: usize) -> String {
    if value.is_zero() {
        return "0".to_string();
    }
    let digits = digits.max(1);
    let negative = value.is_negative();
    let magnitude = value.abs();

    // Find exponent e with 10^e <= magnitude < 10^(e+1).
    let ten = Rational::from_integer(BigInt::from(10));
    let mut exponent: i64 = 0;
    let mut scaled = magnitude.clone();
    while scaled >= ten {
        scaled /= &ten;
        exponent += 1;
    }
    while scaled < Rational::one() {
        scaled *= &ten;
        exponent -= 1;
    }

    // Integer holding the significant digits.
    let shift = digits as i64 - 1 - exponent;
    let scale = num_traits::pow(BigInt::from(10), shift.unsigned_abs() as usize);
    let shifted = if shift >= 0 {
        &magnitude * Rational::from_integer(scale.clone())
    } else {
        &magnitude / Rational::from_integer(scale.clone())
    };
    let (q, r) = shifted.numer().div_rem(shifted.denom());
    let mut mantissa = q;
    if r * 2 >= *shifted.denom() {
        mantissa += 1;
    }

    // Rounding may carry into an extra digit (e.g. 9.999 -> 10.00).
    let mut text = mantissa.to_string();
    let mut point = exponent + 1;
    if text.len() > digits {
        text.truncate(digits);
        point += 1;
    }

    let body = if point <= 0 {
        format!("0.{}{}", "0".repeat(point.unsigned_abs() as usize), text)
    } else if point as usize >= text.len() {
        format!("{}{}", text, "0".repeat(point as usize - text.len()))
    } else {
        let (head, tail) = text.split_at(point as usize);
        format!("{head}.{tail}")
    };
    let body = if body.contains('.') {
        body.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        body
    };
    if negative {
        format!("-{body}")
    } else {
        body
    }
}
