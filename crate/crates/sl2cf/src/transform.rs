//! Value-preserving rewrites between sequence classes.
//!
//! Both rewrites are consequences of the identity
//! `x + 1/(1 + 1/y) = x + 1 - 1/(y + 1)` (valid for y != -1, 0):
//!
//! * [`transform_f`] takes a short representation (class A1) and removes
//!   its interior quotients equal to 1, producing a representation with
//!   every quotient past the first of magnitude at least 2 (class A2);
//! * [`transform_g`] undoes this, taking a class A2 representation back to
//!   one with nonnegative interior quotients.
//!
//! The recursive definitions splice a rewritten prefix onto a transformed
//! remainder with alternating negation. The implementations below run the
//! same computation with an explicit accumulator and a sign flag, so very
//! long sequences cannot exhaust the call stack; tests check the outputs
//! against the literal recursion.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::seq::{eval, join_quotients, PQSeq, SeqClass};

fn negated_if(piece: Vec<BigInt>, negate: bool) -> Vec<BigInt> {
    if negate {
        piece.into_iter().map(|q| -q).collect()
    } else {
        piece
    }
}

/// Rewrites a short representation into one without interior quotients
/// equal to 1, preserving the value exactly.
///
/// At the first interior 1, say at index j, the sequence splits into the
/// prefix `[q0, ..., q_{j-1} + 1]` and the negated rewrite of
/// `[q_{j+1} + 1, q_{j+2}, ...]`; the loop repeats this on the remainder,
/// flipping the sign each round.
pub fn transform_f(s: &PQSeq) -> Result<PQSeq> {
    if s.class() != SeqClass::A1 && !s.is_in(SeqClass::A1) {
        return Err(Error::ClassViolation {
            expected: SeqClass::A1,
            reason: "input of the unit-removing rewrite".into(),
        });
    }
    let out = f_quotients(s.quotients())?;
    // The rewrite always lands in A2; failing this check is a bug.
    PQSeq::new(out, SeqClass::A2).map_err(|e| Error::Inconsistency(format!("rewrite left A2: {e}")))
}

fn f_quotients(input: &[BigInt]) -> Result<Vec<BigInt>> {
    let mut out: Vec<BigInt> = Vec::with_capacity(input.len());
    let mut cur: Vec<BigInt> = input.to_vec();
    let mut negate = false;
    loop {
        let j = (1..cur.len().saturating_sub(1)).find(|&i| cur[i].is_one());
        match j {
            None => {
                let piece = negated_if(cur, negate);
                join_quotients(&mut out, &piece)?;
                return Ok(out);
            }
            Some(j) => {
                let mut piece: Vec<BigInt> = cur[..j].to_vec();
                let last = piece.len() - 1;
                piece[last] += 1;
                join_quotients(&mut out, &negated_if(piece, negate))?;
                cur.drain(..=j);
                cur[0] += 1;
                negate = !negate;
            }
        }
    }
}

/// Rewrites a class A2 representation into one with positive interior
/// quotients, preserving the value exactly.
///
/// At the first negative quotient past index 0, say at index j, the
/// sequence splits into the prefix `[q0, ..., q_{j-1} - 1, 1]` and the
/// rewrite of the entrywise-negated `[q_j + 1, q_{j+1}, ...]`.
///
/// The result is the unique short representation whenever the final input
/// quotient has magnitude at least 3. A final quotient of -2 (possibly
/// after sign flips) can leave a trailing 1 instead; the value is still
/// exact and such a result carries class A0 rather than A1.
pub fn transform_g(s: &PQSeq) -> Result<PQSeq> {
    if s.class() != SeqClass::A2 && !s.is_in(SeqClass::A2) {
        return Err(Error::ClassViolation {
            expected: SeqClass::A2,
            reason: "input of the sign-removing rewrite".into(),
        });
    }
    let out = g_quotients(s.quotients())?;
    let class = if PQSeq::new(out.clone(), SeqClass::A1).is_ok() {
        SeqClass::A1
    } else {
        SeqClass::A0
    };
    PQSeq::new(out, class).map_err(|e| Error::Inconsistency(format!("rewrite left A0: {e}")))
}

fn g_quotients(input: &[BigInt]) -> Result<Vec<BigInt>> {
    let mut out: Vec<BigInt> = Vec::with_capacity(input.len());
    // The conceptual working sequence is `rest` negated when `negate` is
    // set; `rest` itself keeps positive interior quotients throughout.
    let mut rest: Vec<BigInt> = input.to_vec();
    let mut negate = false;
    loop {
        let j = (1..rest.len()).find(|&i| {
            if negate {
                rest[i].is_positive()
            } else {
                rest[i].is_negative()
            }
        });
        match j {
            None => {
                let piece = negated_if(rest, negate);
                join_quotients(&mut out, &piece)?;
                return Ok(out);
            }
            Some(j) => {
                let mut piece = negated_if(rest[..j].to_vec(), negate);
                let last = piece.len() - 1;
                piece[last] -= 1;
                piece.push(BigInt::one());
                join_quotients(&mut out, &piece)?;
                rest.drain(..j);
                if negate {
                    rest[0] -= 1;
                } else {
                    rest[0] += 1;
                }
                negate = !negate;
            }
        }
    }
}

/// Sequence form of multiplying the column (a, b) on the left by the lower
/// elementary matrix power with parameter `u` and exponent `alpha`: the
/// represented fraction a/b becomes a/(a*u*alpha + b).
///
/// With q0 = 0 the new sequence is `[0, u*alpha + q1, q2, ...]`, dropping
/// both leading entries when `u*alpha + q1 = 0`; with q0 != 0 it is
/// `[0, u*alpha, q0, q1, ...]`. Exponent zero returns the input unchanged.
pub fn prepend_l(s: &PQSeq, u: &BigInt, alpha: &BigInt) -> Result<PQSeq> {
    if !u.is_positive() {
        return Err(Error::InvalidInput(format!("u must be positive, got {u}")));
    }
    let value = eval(s)?;
    let new_den = value.numer() * u * alpha + value.denom();
    if new_den.is_zero() {
        return Err(Error::DegenerateSequence(
            "the transformed fraction has a zero denominator".into(),
        ));
    }
    let expected = Rational::new(value.numer().clone(), new_den);
    let q = s.quotients();
    let out: Vec<BigInt> = if alpha.is_zero() || value.numer().is_zero() {
        q.to_vec()
    } else if q[0].is_zero() {
        let head = u * alpha + &q[1];
        if head.is_zero() {
            q[2..].to_vec()
        } else {
            let mut out = vec![BigInt::zero(), head];
            out.extend_from_slice(&q[2..]);
            out
        }
    } else {
        let mut out = vec![BigInt::zero(), u * alpha];
        out.extend_from_slice(q);
        out
    };
    let result = PQSeq::new(out, SeqClass::A0)?;
    debug_assert_eq!(eval(&result).unwrap(), expected);
    Ok(result)
}

/// Sequence form of multiplying the column (a, b) on the left by the upper
/// elementary matrix power with parameter `v` and exponent `alpha`: the
/// represented fraction a/b becomes (a + b*v*alpha)/b, i.e. the value
/// shifts by the integer v*alpha.
pub fn prepend_r(s: &PQSeq, v: &BigInt, alpha: &BigInt) -> Result<PQSeq> {
    if !v.is_positive() {
        return Err(Error::InvalidInput(format!("v must be positive, got {v}")));
    }
    let value = eval(s)?;
    let mut out = s.quotients().to_vec();
    out[0] += v * alpha;
    let result = PQSeq::new(out, SeqClass::A0)?;
    debug_assert_eq!(
        eval(&result).unwrap(),
        value + Rational::from(v * alpha)
    );
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::normalize;
    use crate::seq::short_cf;

    fn seq(q: &[i64], class: SeqClass) -> PQSeq {
        PQSeq::from_i64s(q, class).unwrap()
    }

    fn rat(n: i64, d: i64) -> Rational {
        normalize(BigInt::from(n), BigInt::from(d)).unwrap()
    }

    // Literal recursive definitions, kept as the oracle for the iterative
    // implementations.

    fn join(mut a: Vec<BigInt>, b: &[BigInt]) -> Vec<BigInt> {
        join_quotients(&mut a, b).unwrap();
        a
    }

    fn neg(q: &[BigInt]) -> Vec<BigInt> {
        q.iter().map(|x| -x).collect()
    }

    fn f_recursive(q: &[BigInt]) -> Vec<BigInt> {
        match (1..q.len().saturating_sub(1)).find(|&i| q[i].is_one()) {
            None => q.to_vec(),
            Some(j) => {
                let mut prefix = q[..j].to_vec();
                let last = prefix.len() - 1;
                prefix[last] += 1;
                let mut tail = vec![&q[j + 1] + 1];
                tail.extend_from_slice(&q[j + 2..]);
                join(prefix, &neg(&f_recursive(&tail)))
            }
        }
    }

    fn g_recursive(q: &[BigInt]) -> Vec<BigInt> {
        match (1..q.len()).find(|&i| q[i].is_negative()) {
            None => q.to_vec(),
            Some(j) => {
                let mut prefix = q[..j].to_vec();
                let last = prefix.len() - 1;
                prefix[last] -= 1;
                prefix.push(BigInt::one());
                let mut tail = vec![&q[j] + 1];
                tail.extend_from_slice(&q[j + 1..]);
                join(prefix, &g_recursive(&neg(&tail)))
            }
        }
    }

    #[test]
    fn f_golden_sequence() {
        let s = seq(&[-3, 4, 2, 1, 6, 1, 8], SeqClass::A1);
        let out = transform_f(&s).unwrap();
        assert_eq!(out, seq(&[-3, 4, 3, -8, 9], SeqClass::A));
        assert_eq!(out.class(), SeqClass::A2);
        assert_eq!(eval(&out).unwrap(), eval(&s).unwrap());
    }

    #[test]
    fn f_single_quotient_is_fixed() {
        let s = seq(&[7], SeqClass::A1);
        assert_eq!(transform_f(&s).unwrap(), s);
    }

    #[test]
    fn f_on_small_fraction() {
        // j = 1 splits off the prefix [1]; the remainder [3, 2, 2] has no
        // interior 1, so it is negated and appended.
        let s = seq(&[0, 1, 2, 2, 2], SeqClass::A1);
        let out = transform_f(&s).unwrap();
        assert_eq!(out, seq(&[1, -3, -2, -2], SeqClass::A));
        assert_eq!(eval(&out).unwrap(), rat(12, 17));
    }

    #[test]
    fn f_rejects_non_a1_input() {
        let s = seq(&[1, -2, 3], SeqClass::A2);
        assert!(matches!(
            transform_f(&s),
            Err(Error::ClassViolation { .. })
        ));
    }

    #[test]
    fn g_golden_sequence() {
        let s = seq(&[-3, 4, 3, -8, 9], SeqClass::A2);
        let out = transform_g(&s).unwrap();
        assert_eq!(out, seq(&[-3, 4, 2, 1, 6, 1, 8], SeqClass::A));
        assert_eq!(out.class(), SeqClass::A1);
        assert_eq!(out, short_cf(&rat(-2457, 887)));
    }

    #[test]
    fn g_single_quotient_is_fixed() {
        let s = seq(&[5], SeqClass::A2);
        assert_eq!(transform_g(&s).unwrap(), s);
    }

    #[test]
    fn g_on_small_fraction() {
        let s = seq(&[1, -3, -2, -2], SeqClass::A2);
        let out = transform_g(&s).unwrap();
        assert_eq!(out, seq(&[0, 1, 2, 2, 2], SeqClass::A));
        assert_eq!(eval(&out).unwrap(), rat(12, 17));
    }

    #[test]
    fn g_rejects_non_a2_input() {
        let s = seq(&[0, 1, 2], SeqClass::A1);
        assert!(matches!(
            transform_g(&s),
            Err(Error::ClassViolation { .. })
        ));
    }

    #[test]
    fn g_merge_case() {
        // The remainder after the first split starts with a zero quotient,
        // exercising the fold-in rule of the join.
        let s = seq(&[3, -2, 5], SeqClass::A2);
        let out = transform_g(&s).unwrap();
        assert_eq!(out, seq(&[2, 2, 4], SeqClass::A));
        assert_eq!(eval(&out).unwrap(), eval(&s).unwrap());
    }

    #[test]
    fn g_trailing_minus_two_leaves_a0() {
        // A final -2 rewrites to a trailing 1: the value is exact but the
        // result is not a short representation.
        let s = seq(&[5, -2], SeqClass::A2);
        let out = transform_g(&s).unwrap();
        assert_eq!(out, seq(&[4, 1, 1], SeqClass::A));
        assert_eq!(out.class(), SeqClass::A0);
        assert_eq!(eval(&out).unwrap(), rat(9, 2));
        assert_eq!(out.quotients(), &g_recursive(s.quotients())[..]);
    }

    #[test]
    fn iterative_matches_recursive_on_fixed_cases() {
        let cases: &[&[i64]] = &[
            &[-3, 4, 2, 1, 6, 1, 8],
            &[0, 1, 2, 2, 2],
            &[2, 1, 2],
            &[0, 1, 2, 1, 3],
            &[1, 1, 1, 1, 2],
            &[5, 2],
            &[9],
        ];
        for &case in cases {
            let s = seq(case, SeqClass::A1);
            assert_eq!(
                transform_f(&s).unwrap().quotients(),
                &f_recursive(s.quotients())[..],
                "f mismatch on {case:?}"
            );
        }
        let cases: &[&[i64]] = &[
            &[-3, 4, 3, -8, 9],
            &[1, -3, -2, -2],
            &[2, -3, 4, -5],
            &[3, -2, 5],
            &[0, -2, 2],
            &[5, -2],
            &[-4, 2, 2],
            &[7],
        ];
        for &case in cases {
            let s = seq(case, SeqClass::A2);
            assert_eq!(
                transform_g(&s).unwrap().quotients(),
                &g_recursive(s.quotients())[..],
                "g mismatch on {case:?}"
            );
        }
    }

    #[test]
    fn prepend_r_shifts_value() {
        // 2/5 = [0,2,2]; v = 2, alpha = 1 shifts to [2,2,2] = 12/5.
        let s = seq(&[0, 2, 2], SeqClass::A1);
        let out = prepend_r(&s, &BigInt::from(2), &BigInt::from(1)).unwrap();
        assert_eq!(out, seq(&[2, 2, 2], SeqClass::A));
        assert_eq!(eval(&out).unwrap(), rat(12, 5));
    }

    #[test]
    fn prepend_l_cancelling_head() {
        // 2/5 = [0,2,2]; u = 2, alpha = -1 makes u*alpha + q1 = 0, dropping
        // two entries: 2/(2*(-2)+5) = 2/1 = [2].
        let s = seq(&[0, 2, 2], SeqClass::A1);
        let out = prepend_l(&s, &BigInt::from(2), &BigInt::from(-1)).unwrap();
        assert_eq!(out, seq(&[2], SeqClass::A));
        assert_eq!(eval(&out).unwrap(), rat(2, 1));
    }

    #[test]
    fn prepend_l_nonzero_head() {
        // 3/1 = [3]; u = 2, alpha = 1 gives 3/(3*2+1) = 3/7 = [0,2,3].
        let s = seq(&[3], SeqClass::A1);
        let out = prepend_l(&s, &BigInt::from(2), &BigInt::from(1)).unwrap();
        assert_eq!(out, seq(&[0, 2, 3], SeqClass::A));
        assert_eq!(eval(&out).unwrap(), rat(3, 7));
    }

    #[test]
    fn prepend_l_zero_head_nonzero_sum() {
        // 2/5 = [0,2,2]; u = 3, alpha = 1: 2/(2*3+5) = 2/11 = [0,5,2].
        let s = seq(&[0, 2, 2], SeqClass::A1);
        let out = prepend_l(&s, &BigInt::from(3), &BigInt::from(1)).unwrap();
        assert_eq!(out, seq(&[0, 5, 2], SeqClass::A));
        assert_eq!(eval(&out).unwrap(), rat(2, 11));
    }

    #[test]
    fn prepend_l_zero_denominator() {
        // 1/2 = [0,2]; u = 2, alpha = -1: 1*(-2)+2 = 0.
        let s = seq(&[0, 2], SeqClass::A1);
        assert!(matches!(
            prepend_l(&s, &BigInt::from(2), &BigInt::from(-1)),
            Err(Error::DegenerateSequence(_))
        ));
    }

    #[test]
    fn prepend_zero_exponent_is_identity() {
        let s = seq(&[3, 2], SeqClass::A1);
        assert_eq!(
            prepend_l(&s, &BigInt::from(4), &BigInt::from(0)).unwrap(),
            s
        );
        assert_eq!(
            prepend_r(&s, &BigInt::from(4), &BigInt::from(0)).unwrap(),
            s
        );
    }
}
