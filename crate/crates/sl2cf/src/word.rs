//! Words in the two elementary generators.
//!
//! A word is an alternating product of nonzero powers of the lower
//! generator L = [1, 0; u, 1] and the upper generator R = [1, v; 0, 1].
//! For u, v >= 2 the generators are free, so members of the generated
//! monoid or group have exactly one such word.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::matrix::{Mat2, Params};

/// The two generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Gen {
    L,
    R,
}

impl Gen {
    pub fn other(self) -> Gen {
        match self {
            Gen::L => Gen::R,
            Gen::R => Gen::L,
        }
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Gen::L => "L",
            Gen::R => "R",
        })
    }
}

/// A canonical generator word: alternating letters, nonzero exponents,
/// empty word for the identity.
///
/// [`GenWord::push`] maintains the canonical form, merging powers of the
/// same letter and dropping factors that cancel to exponent zero.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct GenWord {
    factors: Vec<(Gen, BigInt)>,
}

impl GenWord {
    pub fn identity() -> Self {
        GenWord::default()
    }

    pub fn from_factors<I, E>(factors: I) -> Self
    where
        I: IntoIterator<Item = (Gen, E)>,
        E: Into<BigInt>,
    {
        let mut word = GenWord::identity();
        for (gen, exp) in factors {
            word.push(gen, exp.into());
        }
        word
    }

    /// Appends `gen^exp` on the right, keeping the word canonical.
    pub fn push(&mut self, gen: Gen, exp: BigInt) {
        if exp.is_zero() {
            return;
        }
        if let Some((last_gen, last_exp)) = self.factors.last_mut() {
            if *last_gen == gen {
                *last_exp += exp;
                if last_exp.is_zero() {
                    self.factors.pop();
                }
                return;
            }
        }
        self.factors.push((gen, exp));
    }

    pub fn factors(&self) -> &[(Gen, BigInt)] {
        &self.factors
    }

    pub fn is_identity(&self) -> bool {
        self.factors.is_empty()
    }

    /// Number of alternating generator powers.
    pub fn block_count(&self) -> usize {
        self.factors.len()
    }
}

impl fmt::Display for GenWord {
    /// Space-separated powers, `L^k` with the `^1` left off, `I` for the
    /// identity. Example: `R^-1 L R L^-2 R^3 L`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("I");
        }
        for (i, (gen, exp)) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            if exp.is_one() {
                write!(f, "{gen}")?;
            } else {
                write!(f, "{gen}^{exp}")?;
            }
        }
        Ok(())
    }
}

/// The generator power as a matrix: `L^alpha = [1, 0; u*alpha, 1]`,
/// `R^alpha = [1, v*alpha; 0, 1]`.
pub fn gen_power(gen: Gen, p: &Params, alpha: &BigInt) -> Mat2 {
    match gen {
        Gen::L => Mat2::new(1, 0, p.u() * alpha, 1),
        Gen::R => Mat2::new(1, p.v() * alpha, 0, 1),
    }
}

/// Exact product of the word's generator powers, in word order.
pub fn word_to_matrix(w: &GenWord, p: &Params) -> Mat2 {
    let mut acc = Mat2::identity();
    for (gen, exp) in w.factors() {
        acc = acc.mul(&gen_power(*gen, p, exp));
    }
    acc
}
