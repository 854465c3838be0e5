//! Representation functions of complementary partitions of `ℕ`.
//!
//! `R2(A, n)` counts `a + a' = n` with `a < a'` in `A`, `R3(A, n)` the same
//! with `a <= a'`. The crate computes them exactly (pointwise and over whole
//! ranges), builds and checks the partitions `ℕ = A ⊔ (ℕ \ A)` for which
//! they agree on both sides, and measures how closely `R2(A, n)` tracks
//! `n/8`. The Thue–Morse set `A0` (even binary digit sum) is the model case.
//!
//! The crate is `no_std` and needs only `alloc`.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod density;
pub mod digit_analysis;
pub mod digits;
pub mod error;
pub mod extremal;
pub mod partition;
pub mod prefix;
pub mod repfn;

pub use density::{density_from_counts, density_profile, deviation, DensityReport, Window};
pub use digit_analysis::{
    classify_pair, enumerate_s, enumerate_t, f_profile, in_p, in_q, toggle, ParityClass, RepPair,
};
pub use digits::{digit_block, digits, popcount, thue_morse_member, DigitVector};
pub use error::{Error, Result};
pub use extremal::{allones_zero_check, extremal_scan, ExtremeRecord, Windowing};
pub use partition::{
    block_structure_check, check_digit_rules, extend_partition, lemma2_check, verify_equality,
    PartitionSpec, Variant, VerificationReport,
};
pub use prefix::{complement_prefix, Limits, SetPrefix};
pub use repfn::{r2, r2_range, r3, r3_range, r_cross, r_cross_range, CounterKind, RangeEngine};
