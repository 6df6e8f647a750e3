//! Exact rational scalars.
//!
//! All coordinates in this crate are [`Rational`] values: reduced fractions of
//! arbitrary-precision integers with a positive denominator. The textual form
//! used by every file format is `"p/q"`, or just `"p"` when the denominator
//! is one.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

use crate::Error;

/// An exact rational number: reduced `p/q` with `q > 0`.
pub type Rational = BigRational;

/// Convenience constructor from machine integers.
pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Convenience constructor for integers.
pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// Formats a rational as `p/q`, or `p` when the denominator is one.
pub fn format_rational(value: &Rational) -> String {
    if value.denom().is_one() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

/// Parses `"p/q"` or `"p"`. The denominator must be nonzero; the result is
/// reduced with a positive denominator.
pub fn parse_rational(text: &str) -> Result<Rational, Error> {
    let text = text.trim();
    let (numer, denom) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let numer: BigInt = numer
        .parse()
        .map_err(|_| Error::Parse(format!("invalid integer {numer:?}")))?;
    let denom: BigInt = denom
        .parse()
        .map_err(|_| Error::Parse(format!("invalid integer {denom:?}")))?;
    if denom.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {text:?}")));
    }
    Ok(Rational::new(numer, denom))
}

/// Floor of a rational as a big integer.
pub fn floor_int(value: &Rational) -> BigInt {
    value.floor().to_integer()
}

/// Ceiling of a rational as a big integer.
pub fn ceil_int(value: &Rational) -> BigInt {
    value.ceil().to_integer()
}

/// Greatest common divisor of the absolute values of a slice of integers.
pub fn gcd_all(values: &[BigInt]) -> BigInt {
    let mut g = BigInt::zero();
    for v in values {
        g = num::integer::gcd(g, v.abs());
    }
    g
}

/// Least common multiple of the denominators of a slice of rationals.
pub fn denominator_lcm(values: &[Rational]) -> BigInt {
    let mut l = BigInt::one();
    for v in values {
        l = num::integer::lcm(l, v.denom().clone());
    }
    l
}
