//! Exact rational numbers and their text forms.
//!
//! Everything numeric in the engine is a [`Rational`]: a reduced fraction of
//! arbitrary-precision integers. Floating point never enters the core; the
//! decimal rendering here is output formatting only.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Always-reduced fraction of big integers with a positive denominator.
pub type Rational = num_rational::BigRational;

/// Significant digits used by [`to_decimal`] when no precision is given.
pub const DEFAULT_DECIMAL_DIGITS: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RationalParseError {
    #[error("empty rational literal")]
    Empty,
    #[error("invalid integer `{0}`")]
    InvalidInteger(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
}

/// Parses `p/q` or `p` (optionally signed) into a reduced rational.
pub fn parse_rational(text: &str) -> Result<Rational, RationalParseError> {
    let text = text.trim();
    if text.is_empty() {
        return Err(RationalParseError::Empty);
    }
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (text, None),
    };
    let numer = parse_int(num)?;
    let denom = match den {
        Some(d) => parse_int(d)?,
        None => BigInt::one(),
    };
    if denom.is_zero() {
        return Err(RationalParseError::ZeroDenominator(text.to_string()));
    }
    Ok(Rational::new(numer, denom))
}

fn parse_int(s: &str) -> Result<BigInt, RationalParseError> {
    let digits = s.strip_prefix(['-', '+']).unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(RationalParseError::InvalidInteger(s.to_string()));
    }
    s.parse::<BigInt>()
        .map_err(|_| RationalParseError::InvalidInteger(s.to_string()))
}

/// Lowest-terms text form: `p/q`, or `p` when the denominator is 1.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Display adapter for [`format_rational`].
pub struct Exact<'a>(pub &'a Rational);

impl fmt::Display for Exact<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_rational(self.0))
    }
}

/// Decimal rendering with `digits` significant digits, rounding half to even.
///
/// Values that are exactly representable in fewer digits are printed without
/// trailing zeros. Very small or large magnitudes use `e` notation.
pub fn to_decimal(r: &Rational, digits: usize) -> String {
    let digits = digits.max(1);
    if r.is_zero() {
        return "0".to_string();
    }
    let negative = r.is_negative();
    let abs = r.abs();
    let ten = BigInt::from(10);

    // exponent e such that 10^e <= abs < 10^(e+1)
    let mut exp: i64 = abs.numer().to_string().len() as i64 - abs.denom().to_string().len() as i64;
    let pow10 = |e: i64| -> Rational {
        if e >= 0 {
            Rational::from_integer(num_traits::pow(ten.clone(), e as usize))
        } else {
            Rational::new(BigInt::one(), num_traits::pow(ten.clone(), (-e) as usize))
        }
    };
    while abs < pow10(exp) {
        exp -= 1;
    }
    while abs >= pow10(exp + 1) {
        exp += 1;
    }

    // scaled has `digits` integer digits before rounding
    let shift = digits as i64 - 1 - exp;
    let scaled = &abs * pow10(shift);
    let (quot, rem): (BigInt, BigInt) = scaled.numer().div_rem(scaled.denom());
    let twice_rem: BigInt = rem * 2;
    let mut mantissa = quot;
    match twice_rem.cmp(scaled.denom()) {
        std::cmp::Ordering::Greater => mantissa += 1,
        std::cmp::Ordering::Equal if mantissa.is_odd() => mantissa += 1,
        _ => {}
    }
    // rounding may carry into a new digit (9.99.. -> 10.0..)
    if mantissa.to_string().len() > digits {
        mantissa /= &ten;
        exp += 1;
    }

    let mut body = mantissa.to_string();
    while body.len() > 1 && body.ends_with('0') {
        body.pop();
    }
    let sig = body.len() as i64;
    let mut out = String::new();
    if negative {
        out.push('-');
    }
    if (-7..=digits as i64).contains(&exp) {
        if exp < 0 {
            out.push_str("0.");
            for _ in 0..(-exp - 1) {
                out.push('0');
            }
            out.push_str(&body);
        } else if sig <= exp + 1 {
            out.push_str(&body);
            for _ in 0..(exp + 1 - sig) {
                out.push('0');
            }
        } else {
            let split = (exp + 1) as usize;
            out.push_str(&body[..split]);
            out.push('.');
            out.push_str(&body[split..]);
        }
    } else {
        out.push_str(&body[..1]);
        if body.len() > 1 {
            out.push('.');
            out.push_str(&body[1..]);
        }
        out.push_str(&format!("e{exp}"));
    }
    out
}

#[cfg(test)]
pub(crate) fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}
