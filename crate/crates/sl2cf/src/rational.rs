//! Exact rational numbers.
//!
//! All fractions are arbitrary precision and kept reduced with a positive
//! denominator, so equality is plain structural equality.

use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Exact fraction of two arbitrary-precision integers, always reduced, with
/// a positive denominator.
pub type Rational = num_rational::BigRational;

/// Builds the reduced fraction `num/den` with a positive denominator.
///
/// Fails on a zero denominator.
pub fn normalize(num: BigInt, den: BigInt) -> Result<Rational> {
    if den.is_zero() {
        return Err(Error::InvalidInput("zero denominator".into()));
    }
    Ok(Rational::new(num, den))
}

/// Parses `"p/q"` or `"p"` into a reduced rational.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    let (num_text, den_text) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num = BigInt::from_str(num_text)
        .map_err(|_| Error::InvalidInput(format!("cannot parse integer {num_text:?}")))?;
    let den = BigInt::from_str(den_text)
        .map_err(|_| Error::InvalidInput(format!("cannot parse integer {den_text:?}")))?;
    normalize(num, den)
}

/// Renders a rational as `"p/q"`, or just `"p"` for integers.
pub fn format_rational(x: &Rational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Floor of a rational as an integer.
pub fn floor_int(x: &Rational) -> BigInt {
    x.floor().to_integer()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> Rational {
        normalize(BigInt::from(n), BigInt::from(d)).unwrap()
    }

    #[test]
    fn normalize_keeps_reduced_fraction() {
        let x = rat(-2457, 887);
        assert_eq!(x.numer(), &BigInt::from(-2457));
        assert_eq!(x.denom(), &BigInt::from(887));
    }

    #[test]
    fn normalize_zero_numerator() {
        let x = rat(0, 7);
        assert_eq!(x.numer(), &BigInt::from(0));
        assert_eq!(x.denom(), &BigInt::from(1));
    }

    #[test]
    fn normalize_moves_sign_and_reduces() {
        let x = rat(4, -6);
        assert_eq!(x.numer(), &BigInt::from(-2));
        assert_eq!(x.denom(), &BigInt::from(3));
    }

    #[test]
    fn normalize_rejects_zero_denominator() {
        assert!(matches!(
            normalize(BigInt::from(1), BigInt::from(0)),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn parse_and_format_round_trip() {
        let x = parse_rational("-2457/887").unwrap();
        assert_eq!(format_rational(&x), "-2457/887");
        let y = parse_rational("5").unwrap();
        assert_eq!(format_rational(&y), "5");
        let z = parse_rational(" 4 / -6 ").unwrap();
        assert_eq!(format_rational(&z), "-2/3");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
    }

    #[test]
    fn floor_matches_euclidean_floor() {
        assert_eq!(floor_int(&rat(-2457, 887)), BigInt::from(-3));
        assert_eq!(floor_int(&rat(7, 2)), BigInt::from(3));
        assert_eq!(floor_int(&rat(-7, 2)), BigInt::from(-4));
    }
}
