//! Finite-window converse of the partition characterization: every prefix whose
//! representation functions balance against its complement on
//! `[2N-1, x]` has a balanced initial segment and follows the digit
//! recurrence for all `m` with `2m + 1 <= x/4`.

use repfn_core::partition::{
    balanced_initials, check_digit_rules, extend_partition, verify_equality, PartitionSpec, Variant,
};
use repfn_core::repfn::{count, CounterKind};
use repfn_core::SetPrefix;

/// All bitmaps on `[0, x]` with `R(A, n) = R(ℕ \ A, n)` for `2N-1 <= n <= x`.
///
/// The counts at `n` only see `[0, n]`, so the search fixes bits in order
/// and prunes as soon as a target fails.
fn balanced_prefixes(threshold: u64, x: u64, kind: CounterKind) -> Vec<Vec<bool>> {
    fn holds(bits: &[bool], threshold: u64, kind: CounterKind) -> bool {
        let n = bits.len() as u64 - 1;
        if n + 1 < 2 * threshold {
            return true;
        }
        let a = SetPrefix::from_bools(bits).unwrap();
        count(&a, n, kind).unwrap() == count(&a.complement(), n, kind).unwrap()
    }
    let mut out = Vec::new();
    let mut stack = vec![Vec::new()];
    while let Some(bits) = stack.pop() {
        if bits.len() as u64 == x + 1 {
            out.push(bits);
            continue;
        }
        for b in [false, true] {
            let mut next = bits.clone();
            next.push(b);
            if holds(&next, threshold, kind) {
                stack.push(next);
            }
        }
    }
    out
}

#[test]
fn balanced_prefixes_follow_digit_rules() {
    let x = 96;
    for variant in [Variant::R2, Variant::R3] {
        for threshold in 1..=3u64 {
            let found = balanced_prefixes(threshold, x, variant.counter());
            assert!(!found.is_empty());
            for bits in &found {
                let a = SetPrefix::from_bools(bits).unwrap();
                assert!(verify_equality(&a, threshold, x, variant).unwrap().passed);
                assert_eq!(
                    check_digit_rules(&a, threshold, x / 4, variant),
                    Ok(true),
                    "{variant:?} N={threshold} prefix={:?}",
                    a.members().collect::<Vec<_>>()
                );
            }
            // and every balanced initial segment shows up among them
            for initial in balanced_initials(threshold) {
                let spec = PartitionSpec::new(variant, threshold, initial).unwrap();
                let a = extend_partition(&spec, x).unwrap();
                let bits: Vec<bool> = (0..=x).map(|m| a.contains(m)).collect();
                assert!(found.contains(&bits));
            }
        }
    }
}

#[test]
fn all_balanced_initials_extend_to_equal_partitions() {
    let x = 1 << 12;
    for variant in [Variant::R2, Variant::R3] {
        for threshold in 1..=3u64 {
            for initial in balanced_initials(threshold) {
                let spec = PartitionSpec::new(variant, threshold, initial).unwrap();
                let a = extend_partition(&spec, x).unwrap();
                assert!(verify_equality(&a, threshold, x, variant).unwrap().passed);
                assert_eq!(check_digit_rules(&a, threshold, x, variant), Ok(true));
            }
        }
    }
}
