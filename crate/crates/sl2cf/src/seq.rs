//! Finite continued fraction sequences over the integers.
//!
//! A sequence `[q0, q1, ..., qr]` stands for the expression
//! `q0 + 1/(q1 + 1/(... + 1/qr))`. Entries past the first must be nonzero.
//! Sequences are grouped into nested classes:
//!
//! * `A`  — q_i != 0 for 0 < i <= r (the expression is syntactically formed);
//! * `A0` — additionally every tail `[q_i, ..., q_r]` with 0 < i < r has a
//!   nonzero value, so the nested division never divides by zero;
//! * `A1` — additionally q_i >= 1 for 0 < i < r and q_r > 1 for r > 0.
//!   These are exactly the short representations: every rational has a
//!   unique one;
//! * `A2` — additionally |q_i| > 1 for 0 < i <= r.
//!
//! Class membership is checked at construction time, never assumed.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// The nested sequence classes, weakest first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SeqClass {
    A,
    A0,
    A1,
    A2,
}

impl fmt::Display for SeqClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            SeqClass::A => "A",
            SeqClass::A0 => "A0",
            SeqClass::A1 => "A1",
            SeqClass::A2 => "A2",
        };
        f.write_str(name)
    }
}

/// A partial-quotient sequence together with the class it was verified
/// against.
///
/// Equality and hashing look at the quotients only; the class tag records
/// which check the value passed when it was built.
#[derive(Debug, Clone)]
pub struct PQSeq {
    quotients: Vec<BigInt>,
    class: SeqClass,
}

impl PartialEq for PQSeq {
    fn eq(&self, other: &Self) -> bool {
        self.quotients == other.quotients
    }
}

impl Eq for PQSeq {}

impl std::hash::Hash for PQSeq {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.quotients.hash(state);
    }
}

impl PQSeq {
    /// Builds a sequence, verifying it against `class`.
    pub fn new(quotients: Vec<BigInt>, class: SeqClass) -> Result<Self> {
        verify_class(&quotients, class)?;
        Ok(PQSeq { quotients, class })
    }

    /// Convenience constructor from machine integers (mostly for tests).
    pub fn from_i64s(quotients: &[i64], class: SeqClass) -> Result<Self> {
        Self::new(quotients.iter().map(|&q| BigInt::from(q)).collect(), class)
    }

    pub fn quotients(&self) -> &[BigInt] {
        &self.quotients
    }

    /// The class this sequence was verified against at construction.
    pub fn class(&self) -> SeqClass {
        self.class
    }

    /// Number of partial quotients (always at least one).
    pub fn len(&self) -> usize {
        self.quotients.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Re-runs the check for `class` on the current quotients.
    pub fn is_in(&self, class: SeqClass) -> bool {
        verify_class(&self.quotients, class).is_ok()
    }

    /// Entrywise negation. The value of the negated sequence is the negated
    /// value. Negation preserves A, A0 and A2; a negated A1 sequence is
    /// only guaranteed to be in A0.
    pub fn negated(&self) -> PQSeq {
        let class = match self.class {
            SeqClass::A1 => SeqClass::A0,
            c => c,
        };
        PQSeq {
            quotients: self.quotients.iter().map(|q| -q).collect(),
            class,
        }
    }

    /// Joins two sequences. If `other` starts with a nonzero quotient the
    /// result is the plain concatenation; if it starts with zero, that zero
    /// and the following quotient are folded into the last quotient of
    /// `self`. A merge that zeroes an interior quotient is an error.
    ///
    /// The result is revalidated against class `A`.
    pub fn concat(&self, other: &PQSeq) -> Result<PQSeq> {
        let mut joined = self.quotients.clone();
        join_quotients(&mut joined, &other.quotients)?;
        PQSeq::new(joined, SeqClass::A)
    }
}

impl fmt::Display for PQSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, q) in self.quotients.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{q}")?;
        }
        write!(f, "]")
    }
}

impl FromStr for PQSeq {
    type Err = Error;

    /// Parses the bracketed comma-separated form, e.g. `[-3,4,2,1,6,1,8]`.
    /// The result is validated against class `A`; callers requiring a
    /// stronger class check it separately.
    fn from_str(text: &str) -> Result<Self> {
        let inner = text
            .trim()
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| {
                Error::InvalidInput(format!("sequence {text:?} is not of the form [q0,q1,...]"))
            })?;
        let quotients = inner
            .split(',')
            .map(|part| {
                BigInt::from_str(part.trim())
                    .map_err(|_| Error::InvalidInput(format!("cannot parse quotient {part:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        PQSeq::new(quotients, SeqClass::A)
    }
}

/// In-place join implementing the two-case rule of [`PQSeq::concat`].
/// Shared with the sequence rewrites, which emit pieces one at a time.
pub(crate) fn join_quotients(acc: &mut Vec<BigInt>, piece: &[BigInt]) -> Result<()> {
    if piece.is_empty() {
        return Ok(());
    }
    if acc.is_empty() {
        acc.extend_from_slice(piece);
        return Ok(());
    }
    if piece[0].is_zero() {
        // Drop the leading zero and fold the next quotient into the last
        // accumulated one; a lone [0] contributes nothing.
        if piece.len() == 1 {
            return Ok(());
        }
        let last = acc.len() - 1;
        acc[last] += &piece[1];
        if last > 0 && acc[last].is_zero() {
            return Err(Error::DegenerateSequence(
                "merge produced a zero interior quotient".into(),
            ));
        }
        acc.extend_from_slice(&piece[2..]);
    } else {
        acc.extend_from_slice(piece);
    }
    Ok(())
}

fn verify_class(q: &[BigInt], class: SeqClass) -> Result<()> {
    if q.is_empty() {
        return Err(Error::InvalidInput(
            "a sequence needs at least one quotient".into(),
        ));
    }
    if let Some(i) = (1..q.len()).find(|&i| q[i].is_zero()) {
        return Err(Error::ClassViolation {
            expected: class,
            reason: format!("zero quotient at index {i}"),
        });
    }
    match class {
        SeqClass::A => Ok(()),
        SeqClass::A0 => tails_nonzero(q).map(|_| ()),
        SeqClass::A1 => {
            let r = q.len() - 1;
            for (i, qi) in q.iter().enumerate().take(r).skip(1) {
                if qi < &BigInt::one() {
                    return Err(Error::ClassViolation {
                        expected: class,
                        reason: format!("quotient {qi} at index {i} is below 1"),
                    });
                }
            }
            if r > 0 && q[r] <= BigInt::one() {
                return Err(Error::ClassViolation {
                    expected: class,
                    reason: format!("final quotient {} is not above 1", q[r]),
                });
            }
            Ok(())
        }
        SeqClass::A2 => {
            for (i, qi) in q.iter().enumerate().skip(1) {
                if qi.abs() <= BigInt::one() {
                    return Err(Error::ClassViolation {
                        expected: class,
                        reason: format!("quotient {qi} at index {i} has magnitude below 2"),
                    });
                }
            }
            Ok(())
        }
    }
}

/// Back-to-front fold of the continued fraction expression. Returns the
/// value, failing if any tail with index above zero evaluates to zero.
fn fold_value(q: &[BigInt]) -> Result<Rational> {
    let mut acc = Rational::from(q[q.len() - 1].clone());
    for (i, qi) in q.iter().enumerate().rev().skip(1) {
        if acc.is_zero() {
            return Err(Error::DegenerateSequence(format!(
                "tail starting at index {} evaluates to zero",
                i + 1
            )));
        }
        acc = Rational::from(qi.clone()) + acc.recip();
    }
    Ok(acc)
}

fn tails_nonzero(q: &[BigInt]) -> Result<Rational> {
    fold_value(q)
}

/// Exact value of a sequence, computed back to front.
///
/// Doubles as the effective A0 test: a sequence whose interior tail hits
/// zero is reported as degenerate.
pub fn eval(s: &PQSeq) -> Result<Rational> {
    fold_value(s.quotients())
}

/// The unique short continued fraction representation of a rational:
/// interior quotients at least 1, final quotient above 1.
///
/// Uses floor division throughout, also for negative values, which makes
/// the interior quotients positive automatically.
pub fn short_cf(x: &Rational) -> PQSeq {
    let mut num = x.numer().clone();
    let mut den = x.denom().clone();
    let mut quotients = Vec::new();
    loop {
        let q = num.div_floor(&den);
        let rem = &num - &q * &den;
        quotients.push(q);
        if rem.is_zero() {
            break;
        }
        num = std::mem::replace(&mut den, rem);
    }
    // A trailing quotient of 1 would violate the short form; [..., q, 1] and
    // [..., q+1] have the same value, so fold it in.
    if quotients.len() > 1 && quotients[quotients.len() - 1].is_one() {
        quotients.pop();
        let last = quotients.len() - 1;
        quotients[last] += 1;
    }
    debug_assert!(verify_class(&quotients, SeqClass::A1).is_ok());
    PQSeq {
        quotients,
        class: SeqClass::A1,
    }
}
