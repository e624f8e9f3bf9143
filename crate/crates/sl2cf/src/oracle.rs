//! Independent brute-force ground truth.
//!
//! [`enumerate_words`] streams every canonical generator word within a
//! block and exponent bound together with its matrix, in a deterministic
//! order: breadth-first by block count, lower generator first, exponent
//! vectors in ascending lexicographic order. [`oracle_check`] scans the
//! stream for a target matrix. [`density_scan`] counts, over a box of
//! second columns, how many ambient matrices pass the group decider.
//!
//! Enumeration can only ever certify membership; a miss within bounds is
//! evidence, not proof, of non-membership.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::{Mat2, Params};
use crate::membership::{check_group, complete_matrix, Ambient, Mode};
use crate::word::{word_to_matrix, Gen, GenWord};

/// Default cap on the number of enumerated words.
pub const DEFAULT_WORD_CAP: u64 = 1_000_000;

/// Cap on the number of (b, d) pairs a density scan may visit.
const DENSITY_PAIR_CAP: u64 = 100_000_000;

/// Bounds for word enumeration.
#[derive(Debug, Clone)]
pub struct EnumSpec {
    pub params: Params,
    /// Maximum number of alternating generator powers.
    pub max_blocks: u32,
    /// Exponents range over [-max, -1] and [1, max] (group mode) or
    /// [1, max] (monoid mode).
    pub max_abs_exponent: u64,
    pub mode: Mode,
    /// Refuse to enumerate more words than this.
    pub cap: u64,
}

impl EnumSpec {
    pub fn new(params: Params, max_blocks: u32, max_abs_exponent: u64, mode: Mode) -> Result<Self> {
        if max_abs_exponent == 0 {
            return Err(Error::InvalidInput(
                "the exponent bound must be at least 1".into(),
            ));
        }
        Ok(EnumSpec {
            params,
            max_blocks,
            max_abs_exponent,
            mode,
            cap: DEFAULT_WORD_CAP,
        })
    }

    pub fn with_cap(mut self, cap: u64) -> Self {
        self.cap = cap;
        self
    }

    fn choices_per_block(&self) -> u64 {
        match self.mode {
            Mode::Monoid => self.max_abs_exponent,
            Mode::Group => 2 * self.max_abs_exponent,
        }
    }

    /// Exact number of words within the bounds: the identity plus
    /// 2 * choices^k words for each block count k >= 1.
    pub fn word_count(&self) -> BigUint {
        let choices = BigUint::from(self.choices_per_block());
        let mut total = BigUint::from(1u32);
        let mut layer = BigUint::from(2u32);
        for _ in 1..=self.max_blocks {
            layer *= &choices;
            total += &layer;
        }
        total
    }

    fn check_cap(&self) -> Result<()> {
        let estimate = self.word_count();
        if estimate > BigUint::from(self.cap) {
            return Err(Error::SearchCapExceeded {
                estimate,
                cap: self.cap,
            });
        }
        Ok(())
    }
}

/// Streams every canonical word within the bounds exactly once, with its
/// matrix. Refuses to start if the word count exceeds the cap.
pub fn enumerate_words(spec: &EnumSpec) -> Result<WordEnum> {
    spec.check_cap()?;
    Ok(WordEnum {
        spec: spec.clone(),
        state: EnumState::Identity,
    })
}

/// Iterator over `(word, matrix)` pairs; see [`enumerate_words`].
#[derive(Debug, Clone)]
pub struct WordEnum {
    spec: EnumSpec,
    state: EnumState,
}

#[derive(Debug, Clone)]
enum EnumState {
    Identity,
    Blocks {
        blocks: u32,
        start: Gen,
        /// Odometer over exponent choices, one index per block, the last
        /// index moving fastest.
        digits: Vec<u64>,
    },
    Done,
}

impl WordEnum {
    fn exponent(&self, index: u64) -> BigInt {
        let max = self.spec.max_abs_exponent;
        match self.spec.mode {
            Mode::Monoid => BigInt::from(index + 1),
            Mode::Group => {
                if index < max {
                    BigInt::from(index as i128 - max as i128)
                } else {
                    BigInt::from(index - max + 1)
                }
            }
        }
    }

    fn advance(&mut self) {
        let choices = self.spec.choices_per_block();
        let next = match &mut self.state {
            EnumState::Identity => {
                if self.spec.max_blocks == 0 {
                    EnumState::Done
                } else {
                    EnumState::Blocks {
                        blocks: 1,
                        start: Gen::L,
                        digits: vec![0],
                    }
                }
            }
            EnumState::Blocks {
                blocks,
                start,
                digits,
            } => {
                let mut pos = digits.len();
                loop {
                    if pos == 0 {
                        break;
                    }
                    pos -= 1;
                    digits[pos] += 1;
                    if digits[pos] < choices {
                        return;
                    }
                    digits[pos] = 0;
                }
                // The odometer wrapped: move to the next starting
                // generator, then to the next block count.
                if *start == Gen::L {
                    *start = Gen::R;
                    return;
                }
                if *blocks == self.spec.max_blocks {
                    EnumState::Done
                } else {
                    EnumState::Blocks {
                        blocks: *blocks + 1,
                        start: Gen::L,
                        digits: vec![0; *blocks as usize + 1],
                    }
                }
            }
            EnumState::Done => return,
        };
        self.state = next;
    }
}

impl Iterator for WordEnum {
    type Item = (GenWord, Mat2);

    fn next(&mut self) -> Option<Self::Item> {
        let item = match &self.state {
            EnumState::Identity => (GenWord::identity(), Mat2::identity()),
            EnumState::Blocks { start, digits, .. } => {
                let mut word = GenWord::identity();
                let mut gen = *start;
                for &digit in digits {
                    word.push(gen, self.exponent(digit));
                    gen = gen.other();
                }
                let matrix = word_to_matrix(&word, &self.spec.params);
                (word, matrix)
            }
            EnumState::Done => return None,
        };
        self.advance();
        Some(item)
    }
}

/// Scans the bounded enumeration for a word whose matrix equals `m`.
/// `None` means no word within bounds matches, nothing more.
pub fn oracle_check(m: &Mat2, spec: &EnumSpec) -> Result<Option<GenWord>> {
    Ok(enumerate_words(spec)?
        .find(|(_, matrix)| matrix == m)
        .map(|(word, _)| word))
}

/// Result of a density scan; serializes to
/// `{"k":…,"entry_bound":…,"ambient":…,"members":…}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DensityReport {
    pub k: u64,
    pub entry_bound: u64,
    pub ambient: u64,
    pub members: u64,
}

/// Over all coprime pairs (b, d) with |b|, |d| <= entry_bound, b = 0
/// (mod k) and d = 1 (mod k^2), completes each pair to an ambient matrix
/// for u = v = k and counts how many pass the group decider.
///
/// Deterministic for fixed inputs. The scan enumerates second columns
/// rather than witness tuples because membership depends on b/d alone.
pub fn density_scan(k: u64, entry_bound: u64) -> Result<DensityReport> {
    if k < 2 {
        return Err(Error::UnsupportedParams(format!(
            "the density scan needs k >= 2, got {k}"
        )));
    }
    let span = 2 * entry_bound + 1;
    let pairs = span.saturating_mul(span);
    if pairs > DENSITY_PAIR_CAP {
        return Err(Error::SearchCapExceeded {
            estimate: BigUint::from(pairs),
            cap: DENSITY_PAIR_CAP,
        });
    }
    let p = Params::new(k, k)?;
    let bound = entry_bound as i128;
    let k = k as i128;
    let ksq = k * k;
    let mut ambient = 0u64;
    let mut members = 0u64;
    let mut d = -bound + (1 - (-bound)).mod_floor(&ksq);
    while d <= bound {
        let mut b = -bound + (-(-bound)).mod_floor(&k);
        while b <= bound {
            if b.gcd(&d) == 1 {
                let completion = complete_matrix(
                    &BigInt::from(b),
                    &BigInt::from(d),
                    &p,
                    Ambient::ScriptG,
                )?;
                if let Some(m) = completion {
                    ambient += 1;
                    if check_group(&m, &p)?.is_member() {
                        members += 1;
                    }
                }
            }
            b += k;
        }
        d += ksq;
    }
    Ok(DensityReport {
        k: k as u64,
        entry_bound,
        ambient,
        members,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn spec(u: i64, v: i64, blocks: u32, exp: u64, mode: Mode) -> EnumSpec {
        EnumSpec::new(Params::new(u, v).unwrap(), blocks, exp, mode).unwrap()
    }

    #[test]
    fn monoid_enumeration_small() {
        let words: Vec<String> = enumerate_words(&spec(2, 2, 2, 1, Mode::Monoid))
            .unwrap()
            .map(|(w, _)| w.to_string())
            .collect();
        assert_eq!(words, vec!["I", "L", "R", "L R", "R L"]);
    }

    #[test]
    fn zero_blocks_yields_identity_only() {
        let all: Vec<_> = enumerate_words(&spec(3, 3, 0, 5, Mode::Group))
            .unwrap()
            .collect();
        assert_eq!(all.len(), 1);
        assert!(all[0].0.is_identity());
        assert_eq!(all[0].1, Mat2::identity());
    }

    #[test]
    fn group_enumeration_count_and_distinctness() {
        let spec = spec(3, 3, 2, 1, Mode::Group);
        assert_eq!(spec.word_count(), BigUint::from(13u32));
        let all: Vec<_> = enumerate_words(&spec).unwrap().collect();
        assert_eq!(all.len(), 13);
        let matrices: HashSet<Mat2> = all.iter().map(|(_, m)| m.clone()).collect();
        assert_eq!(matrices.len(), 13);
    }

    #[test]
    fn word_count_matches_stream_length() {
        for mode in [Mode::Monoid, Mode::Group] {
            let spec = spec(3, 4, 3, 2, mode);
            let n = enumerate_words(&spec).unwrap().count();
            assert_eq!(BigUint::from(n as u64), spec.word_count());
        }
    }

    #[test]
    fn cap_is_enforced() {
        let spec = spec(3, 3, 30, 3, Mode::Group).with_cap(1000);
        assert!(matches!(
            enumerate_words(&spec),
            Err(Error::SearchCapExceeded { .. })
        ));
    }

    #[test]
    fn oracle_check_finds_golden_word() {
        let m = Mat2::new(10105, 2457, -3648, -887);
        let found = oracle_check(&m, &spec(4, 3, 6, 3, Mode::Group))
            .unwrap()
            .unwrap();
        assert_eq!(found.to_string(), "R^-1 L R L^-2 R^3 L");
    }

    #[test]
    fn oracle_check_identity() {
        let found = oracle_check(&Mat2::identity(), &spec(3, 3, 2, 1, Mode::Group))
            .unwrap()
            .unwrap();
        assert!(found.is_identity());
    }

    #[test]
    fn oracle_check_miss() {
        let m = Mat2::new(17, 12, 24, 17);
        assert!(oracle_check(&m, &spec(4, 4, 4, 4, Mode::Group))
            .unwrap()
            .is_none());
    }

    #[test]
    fn density_scan_sanov_case_is_full() {
        let report = density_scan(2, 20).unwrap();
        assert!(report.ambient > 0);
        assert_eq!(report.members, report.ambient);
    }

    #[test]
    fn density_scan_rejects_small_k_and_big_bounds() {
        assert!(matches!(
            density_scan(1, 10),
            Err(Error::UnsupportedParams(_))
        ));
        assert!(matches!(
            density_scan(3, 1_000_000),
            Err(Error::SearchCapExceeded { .. })
        ));
    }

    #[test]
    fn density_report_serializes_to_stable_schema() {
        let report = DensityReport {
            k: 3,
            entry_bound: 200,
            ambient: 10,
            members: 4,
        };
        assert_eq!(
            serde_json::to_string(&report).unwrap(),
            r#"{"k":3,"entry_bound":200,"ambient":10,"members":4}"#
        );
    }
}
