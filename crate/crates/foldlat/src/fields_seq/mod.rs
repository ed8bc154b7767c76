//! Finite fields, B2 sets and M-sequences.

mod b2;
mod gf;
mod mseq;

pub use b2::{bose_b2, search_b2, verify_b2, B2Set};
pub use gf::{gf_build, is_prime, prime_power, FiniteField, FIELD_LIMIT, TABLE_LIMIT};
pub use mseq::{bits_to_string, msequence, parse_bits, validate_msequence, MSequence, MSequenceReport};
