//! Exact arithmetic for the membership problem in 2x2 integer matrix
//! monoids and groups generated by the elementary matrices
//! `L = [1, 0; u, 1]` and `R = [1, v; 0, 1]`.
//!
//! For a matrix M = [a, b; c, d] in the ambient congruence-patterned set,
//! membership in the generated monoid (u, v >= 2) is equivalent to the
//! short continued fraction of b/d having even-indexed quotients divisible
//! by v and odd-indexed quotients divisible by u; membership in the
//! generated group (u, v >= 3) is the same condition after rewriting the
//! short representation into one free of interior quotients equal to 1.
//! For u = v = 2 the ambient condition alone decides membership. In every
//! positive case the divisible quotients are, up to a trailing factor, the
//! exponents of the unique generator factorization, which this crate
//! recovers and verifies.
//!
//! Everything is computed over arbitrary-precision integers and exact
//! rationals; there is no floating point anywhere. All types are immutable
//! values and all operations are pure functions, safe to use from multiple
//! threads.

pub mod error;
pub mod matrix;
pub mod membership;
pub mod oracle;
pub mod rational;
pub mod seq;
pub mod transform;
pub mod word;

pub use error::{Error, Result};
pub use matrix::{in_script_g, in_script_s, Mat2, Params, ScriptWitness};
pub use membership::{
    check_group, check_monoid, complete_matrix, divisibility_check, extract_word, sanov_factor,
    Ambient, Diagnostic, Mode, Verdict,
};
pub use oracle::{
    density_scan, enumerate_words, oracle_check, DensityReport, EnumSpec, WordEnum,
    DEFAULT_WORD_CAP,
};
pub use rational::{format_rational, normalize, parse_rational, Rational};
pub use seq::{eval, short_cf, PQSeq, SeqClass};
pub use transform::{prepend_l, prepend_r, transform_f, transform_g};
pub use word::{gen_power, word_to_matrix, Gen, GenWord};
