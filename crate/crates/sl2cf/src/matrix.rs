//! Exact 2x2 integer matrices and the ambient congruence-patterned sets.
//!
//! For parameters u, v >= 1 the ambient sets consist of the unimodular
//! matrices of the shape
//!
//! ```text
//! [ 1 + u*v*n1    v*n2     ]
//! [   u*n3      1 + u*v*n4 ]
//! ```
//!
//! with the witness (n1, n2, n3, n4) ranging over the nonnegative integers
//! (monoid flavour, all matrix entries nonnegative) or all integers (group
//! flavour). These sets contain the monoid and group generated by the
//! elementary matrices with parameters u and v, and membership in them is a
//! cheap congruence test.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};
use serde::de::Error as _;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Row-major 2x2 matrix of arbitrary-precision integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Mat2 {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
    pub d: BigInt,
}

impl Mat2 {
    pub fn new(
        a: impl Into<BigInt>,
        b: impl Into<BigInt>,
        c: impl Into<BigInt>,
        d: impl Into<BigInt>,
    ) -> Self {
        Mat2 {
            a: a.into(),
            b: b.into(),
            c: c.into(),
            d: d.into(),
        }
    }

    pub fn identity() -> Self {
        Mat2::new(1, 0, 0, 1)
    }

    pub fn det(&self) -> BigInt {
        &self.a * &self.d - &self.b * &self.c
    }

    /// Exact matrix product `self * rhs`.
    pub fn mul(&self, rhs: &Mat2) -> Mat2 {
        Mat2 {
            a: &self.a * &rhs.a + &self.b * &rhs.c,
            b: &self.a * &rhs.b + &self.b * &rhs.d,
            c: &self.c * &rhs.a + &self.d * &rhs.c,
            d: &self.c * &rhs.b + &self.d * &rhs.d,
        }
    }

    /// Inverse of a determinant-one matrix: the adjugate [d, -b; -c, a].
    pub fn inv(&self) -> Result<Mat2> {
        let det = self.det();
        if !det.is_one() {
            return Err(Error::NotUnimodular { det });
        }
        Ok(Mat2 {
            a: self.d.clone(),
            b: -&self.b,
            c: -&self.c,
            d: self.a.clone(),
        })
    }

    /// Action on a column vector: `self * (x, y)^T`.
    pub fn mul_col(&self, x: &BigInt, y: &BigInt) -> (BigInt, BigInt) {
        (&self.a * x + &self.b * y, &self.c * x + &self.d * y)
    }
}

impl fmt::Display for Mat2 {
    /// Row-major whitespace-separated form, e.g. `10105 2457 -3648 -887`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {} {}", self.a, self.b, self.c, self.d)
    }
}

impl FromStr for Mat2 {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let entries = text
            .split_whitespace()
            .map(|part| {
                BigInt::from_str(part)
                    .map_err(|_| Error::InvalidInput(format!("cannot parse entry {part:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        let [a, b, c, d]: [BigInt; 4] = entries.try_into().map_err(|_| {
            Error::InvalidInput("a matrix needs exactly four entries: \"a b c d\"".into())
        })?;
        Ok(Mat2 { a, b, c, d })
    }
}

// Entries travel as decimal strings in JSON so that arbitrary precision
// survives parsers that read numbers as floats.
impl Serialize for Mat2 {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("Mat2", 4)?;
        s.serialize_field("a", &self.a.to_string())?;
        s.serialize_field("b", &self.b.to_string())?;
        s.serialize_field("c", &self.c.to_string())?;
        s.serialize_field("d", &self.d.to_string())?;
        s.end()
    }
}

impl<'de> Deserialize<'de> for Mat2 {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            a: String,
            b: String,
            c: String,
            d: String,
        }
        let raw = Raw::deserialize(deserializer)?;
        let parse = |s: &str| BigInt::from_str(s).map_err(D::Error::custom);
        Ok(Mat2 {
            a: parse(&raw.a)?,
            b: parse(&raw.b)?,
            c: parse(&raw.c)?,
            d: parse(&raw.d)?,
        })
    }
}

/// The generator parameters u and v, both at least 1. Individual
/// operations impose their own stronger lower bounds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Params {
    u: BigInt,
    v: BigInt,
}

impl Params {
    pub fn new(u: impl Into<BigInt>, v: impl Into<BigInt>) -> Result<Self> {
        let (u, v) = (u.into(), v.into());
        if u < BigInt::one() || v < BigInt::one() {
            return Err(Error::InvalidInput(format!(
                "parameters must be at least 1, got u={u}, v={v}"
            )));
        }
        Ok(Params { u, v })
    }

    pub fn u(&self) -> &BigInt {
        &self.u
    }

    pub fn v(&self) -> &BigInt {
        &self.v
    }

    pub fn uv(&self) -> BigInt {
        &self.u * &self.v
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(u, v) = ({}, {})", self.u, self.v)
    }
}

/// The integers (n1, n2, n3, n4) exhibiting the ambient congruence pattern
/// of a matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScriptWitness {
    pub n1: BigInt,
    pub n2: BigInt,
    pub n3: BigInt,
    pub n4: BigInt,
}

impl ScriptWitness {
    /// Rebuilds the matrix this witness describes.
    pub fn reconstruct(&self, p: &Params) -> Mat2 {
        let uv = p.uv();
        Mat2 {
            a: BigInt::one() + &uv * &self.n1,
            b: p.v() * &self.n2,
            c: p.u() * &self.n3,
            d: BigInt::one() + &uv * &self.n4,
        }
    }
}

/// Witness for membership in the group-flavoured ambient set: determinant
/// one and the four congruences a = d = 1 (mod uv), b = 0 (mod v),
/// c = 0 (mod u). Returns `None` when any condition fails.
pub fn in_script_g(m: &Mat2, p: &Params) -> Option<ScriptWitness> {
    if !m.det().is_one() {
        return None;
    }
    let uv = p.uv();
    let a1 = &m.a - BigInt::one();
    let d1 = &m.d - BigInt::one();
    if !a1.is_multiple_of(&uv)
        || !d1.is_multiple_of(&uv)
        || !m.b.is_multiple_of(p.v())
        || !m.c.is_multiple_of(p.u())
    {
        return None;
    }
    Some(ScriptWitness {
        n1: a1 / &uv,
        n2: &m.b / p.v(),
        n3: &m.c / p.u(),
        n4: d1 / &uv,
    })
}

/// Witness for membership in the monoid-flavoured ambient set: the group
/// conditions plus nonnegative entries and a nonnegative witness.
pub fn in_script_s(m: &Mat2, p: &Params) -> Option<ScriptWitness> {
    if m.a.is_negative() || m.b.is_negative() || m.c.is_negative() || m.d.is_negative() {
        return None;
    }
    let w = in_script_g(m, p)?;
    if w.n1.is_negative() || w.n2.is_negative() || w.n3.is_negative() || w.n4.is_negative() {
        return None;
    }
    Some(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    fn params(u: i64, v: i64) -> Params {
        Params::new(u, v).unwrap()
    }

    #[test]
    fn mul_examples() {
        let l2 = Mat2::new(1, 0, 2, 1);
        let r2 = Mat2::new(1, 2, 0, 1);
        assert_eq!(l2.mul(&r2), Mat2::new(1, 2, 2, 5));
        let m = Mat2::new(7, -3, 5, -2);
        assert_eq!(Mat2::identity().mul(&m), m);
        let n = Mat2::new(1, -2, 2, -3);
        assert_eq!(n.mul(&n), Mat2::new(-3, 4, -4, 5));
    }

    #[test]
    fn inv_examples() {
        let r = Mat2::new(1, 3, 0, 1);
        assert_eq!(r.inv().unwrap(), Mat2::new(1, -3, 0, 1));
        assert_eq!(Mat2::identity().inv().unwrap(), Mat2::identity());
        let m = Mat2::new(10105, 2457, -3648, -887);
        let mi = m.inv().unwrap();
        assert_eq!(mi, Mat2::new(-887, -2457, 3648, 10105));
        assert_eq!(m.mul(&mi), Mat2::identity());
        assert!(matches!(
            Mat2::new(2, 0, 0, 1).inv(),
            Err(Error::NotUnimodular { .. })
        ));
    }

    #[test]
    fn script_s_examples() {
        let p = params(2, 2);
        let w = in_script_s(&Mat2::new(1, 2, 2, 5), &p).unwrap();
        assert_eq!(
            w,
            ScriptWitness {
                n1: 0.into(),
                n2: 1.into(),
                n3: 1.into(),
                n4: 1.into()
            }
        );
        assert_eq!(w.reconstruct(&p), Mat2::new(1, 2, 2, 5));

        let id = in_script_s(&Mat2::identity(), &params(5, 3)).unwrap();
        assert_eq!(id.n1, BigInt::zero());
        assert_eq!(id.n4, BigInt::zero());

        // Negative entries rule the monoid ambient set out.
        let m = Mat2::new(10105, 2457, -3648, -887);
        assert!(in_script_s(&m, &params(4, 3)).is_none());
    }

    #[test]
    fn script_g_examples() {
        let m = Mat2::new(10105, 2457, -3648, -887);
        let p = params(4, 3);
        let w = in_script_g(&m, &p).unwrap();
        assert_eq!(w.reconstruct(&p), m);

        assert!(in_script_g(&Mat2::identity(), &params(9, 2)).is_some());

        // b odd fails the congruence on b for v = 2.
        assert!(in_script_g(&Mat2::new(1, 1, 0, 1), &params(2, 2)).is_none());
        // Determinant must be exactly one.
        assert!(in_script_g(&Mat2::new(1, 0, 0, -1), &params(2, 2)).is_none());
    }

    #[test]
    fn text_form_round_trip() {
        let m = Mat2::new(10105, 2457, -3648, -887);
        assert_eq!(m.to_string(), "10105 2457 -3648 -887");
        assert_eq!("10105 2457 -3648 -887".parse::<Mat2>().unwrap(), m);
        assert!("1 2 3".parse::<Mat2>().is_err());
        assert!("1 2 3 x".parse::<Mat2>().is_err());
    }

    #[test]
    fn json_form_uses_decimal_strings() {
        let m = Mat2::new(1, 0, -6, 1);
        let json = serde_json::to_string(&m).unwrap();
        assert_eq!(json, r#"{"a":"1","b":"0","c":"-6","d":"1"}"#);
        let back: Mat2 = serde_json::from_str(&json).unwrap();
        assert_eq!(back, m);
    }

    #[test]
    fn params_require_at_least_one() {
        assert!(Params::new(0, 3).is_err());
        assert!(Params::new(3, -1).is_err());
        assert!(Params::new(1, 1).is_ok());
    }
}
