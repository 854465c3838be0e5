//! Partitions `ℕ = A ⊔ (ℕ \ A)` with equal representation functions.
//!
//! A set with `R2(A, n) = R2(ℕ \ A, n)` for all `n >= 2N - 1` is pinned down
//! by its first `2N` members (exactly `N` of them in `A`) and the digit
//! recurrence `2m ∈ A ⇔ m ∈ A`, `2m + 1 ∈ A ⇔ m ∉ A` for `m >= N`. The `R3`
//! analogue swaps the two rules. This module builds such sets, checks both
//! directions of that characterization on finite windows, and checks the
//! block structure that follows from it.

use alloc::vec::Vec;

use crate::digits::thue_morse_member;
use crate::error::{Error, Result};
use crate::prefix::{Limits, SetPrefix};
use crate::repfn::{CounterKind, RangeEngine};

/// Which representation function the partition balances.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Variant {
    R2,
    R3,
}

impl Variant {
    pub fn counter(self) -> CounterKind {
        match self {
            Variant::R2 => CounterKind::R2,
            Variant::R3 => CounterKind::R3,
        }
    }

    /// Membership of `2m + low` given membership of `m >= N`.
    #[inline]
    pub fn child(self, parent: bool, low: u64) -> bool {
        let odd = low & 1 == 1;
        match self {
            Variant::R2 => parent != odd,
            Variant::R3 => parent == odd,
        }
    }
}

/// Threshold `N`, variant and the initial segment `A ∩ [0, 2N-1]`.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PartitionSpec {
    variant: Variant,
    threshold: u64,
    initial: Vec<bool>,
}

impl PartitionSpec {
    /// Validates `initial.len() == 2N` and that exactly `N` bits are set.
    pub fn new(variant: Variant, threshold: u64, initial: Vec<bool>) -> Result<Self> {
        if threshold == 0 {
            return Err(Error::ZeroThreshold);
        }
        let expected = 2 * threshold;
        if initial.len() as u64 != expected {
            return Err(Error::InitialLength {
                expected,
                found: initial.len() as u64,
            });
        }
        let weight = initial.iter().filter(|&&b| b).count() as u64;
        if weight != threshold {
            return Err(Error::InitialWeight {
                expected: threshold,
                found: weight,
            });
        }
        Ok(Self {
            variant,
            threshold,
            initial,
        })
    }

    /// `N = 1`, `A ∩ {0, 1} = {0}`. Under `R2` this extends to the Thue–Morse
    /// set; under `R3` to the set behind the `chen-wang` preset.
    pub fn unit(variant: Variant) -> Self {
        Self {
            variant,
            threshold: 1,
            initial: alloc::vec![true, false],
        }
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn threshold(&self) -> u64 {
        self.threshold
    }

    pub fn initial(&self) -> &[bool] {
        &self.initial
    }

    /// `k0` with `2^(k0-2) < N <= 2^(k0-1)`.
    pub fn k0(&self) -> u32 {
        block_offset_exponent(self.threshold)
    }
}

/// `k0` with `2^(k0-2) < N <= 2^(k0-1)`, i.e. `ceil(log2 N) + 1`.
pub fn block_offset_exponent(threshold: u64) -> u32 {
    assert!(threshold > 0);
    let ceil_log = u64::BITS - (threshold - 1).leading_zeros();
    ceil_log + 1
}

/// All balanced initial segments of length `2N`, in lexicographic order of
/// the bitmap read as `(bit 0, bit 1, …)` with `false < true`.
pub fn balanced_initials(threshold: u64) -> Vec<Vec<bool>> {
    fn walk(len: usize, ones: usize, cur: &mut Vec<bool>, out: &mut Vec<Vec<bool>>) {
        let placed = cur.iter().filter(|&&b| b).count();
        if cur.len() == len {
            if placed == ones {
                out.push(cur.clone());
            }
            return;
        }
        let left = len - cur.len();
        if placed + left > ones {
            cur.push(false);
            walk(len, ones, cur, out);
            cur.pop();
        }
        if placed < ones {
            cur.push(true);
            walk(len, ones, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    walk(2 * threshold as usize, threshold as usize, &mut Vec::new(), &mut out);
    out
}

/// Extends `spec` to `[0, x]` by the variant's digit recurrence.
pub fn extend_partition(spec: &PartitionSpec, x: u64) -> Result<SetPrefix> {
    extend_partition_with(spec, x, &Limits::default())
}

pub fn extend_partition_with(spec: &PartitionSpec, x: u64, limits: &Limits) -> Result<SetPrefix> {
    let min = 2 * spec.threshold - 1;
    if x < min {
        return Err(Error::ExtensionTooShort { x, min });
    }
    let mut a = SetPrefix::empty_with(x, limits)?;
    for (m, &b) in spec.initial.iter().enumerate() {
        a.set(m as u64, b);
    }
    // every m >= 2N has parent m/2 >= N
    for m in 2 * spec.threshold..=x {
        let parent = a.contains(m / 2);
        a.set(m, spec.variant.child(parent, m));
    }
    Ok(a)
}

/// Inclusive interval of checked indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CheckedRange {
    pub lo: u64,
    pub hi: u64,
}

/// One violated check: at index `n`, `lhs` was observed where `rhs` was
/// required.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Failure {
    pub n: u64,
    pub lhs: u64,
    pub rhs: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct VerificationReport {
    pub checked_range: CheckedRange,
    pub failures: Vec<Failure>,
    pub passed: bool,
}

impl VerificationReport {
    pub fn new(lo: u64, hi: u64, failures: Vec<Failure>) -> Self {
        Self {
            checked_range: CheckedRange { lo, hi },
            passed: failures.is_empty(),
            failures,
        }
    }
}

/// Compares `R(A, n)` with `R(ℕ \ A, n)` for `2N - 1 <= n <= x`, `R` chosen
/// by `variant`. Failures carry `(n, R(A, n), R(ℕ \ A, n))`.
pub fn verify_equality(
    a: &SetPrefix,
    threshold: u64,
    x: u64,
    variant: Variant,
) -> Result<VerificationReport> {
    verify_equality_with(a, threshold, x, variant, &Limits::default())
}

pub fn verify_equality_with(
    a: &SetPrefix,
    threshold: u64,
    x: u64,
    variant: Variant,
    limits: &Limits,
) -> Result<VerificationReport> {
    if threshold == 0 {
        return Err(Error::ZeroThreshold);
    }
    a.require(x)?;
    let b = a.complement();
    let kind = variant.counter();
    let lhs = RangeEngine::new(a, x, kind, limits)?;
    let rhs = RangeEngine::new(&b, x, kind, limits)?;
    let lo = 2 * threshold - 1;
    let failures = (lo..=x)
        .filter_map(|n| {
            let (l, r) = (lhs.at(n), rhs.at(n));
            (l != r).then_some(Failure {
                n,
                lhs: l.into(),
                rhs: r.into(),
            })
        })
        .collect();
    Ok(VerificationReport::new(lo, x, failures))
}

/// `true` iff `|A ∩ [0, 2N-1]| = N` and the variant recurrence holds for
/// every `m >= N` with `2m + 1 <= x`.
pub fn check_digit_rules(a: &SetPrefix, threshold: u64, x: u64, variant: Variant) -> Result<bool> {
    if threshold == 0 {
        return Err(Error::ZeroThreshold);
    }
    a.require(x)?;
    let top = 2 * threshold - 1;
    if top > x {
        return Err(Error::ExtensionTooShort { x, min: top });
    }
    if a.count_in(0, top) != threshold {
        return Ok(false);
    }
    let mut m = threshold;
    while 2 * m < x {
        let parent = a.contains(m);
        if a.contains(2 * m) != variant.child(parent, 0)
            || a.contains(2 * m + 1) != variant.child(parent, 1)
        {
            return Ok(false);
        }
        m += 1;
    }
    Ok(true)
}

/// For `N <= m <= m_max`, `0 <= i <= i_max`, `0 <= k < 2^i`: membership of
/// `2^i m + k` must equal membership of `m` when `k ∈ A0` and differ from it
/// when `k ∈ B0`. Failures carry `(2^i m + k, observed, required)` as 0/1;
/// the checked range is the `m` interval.
pub fn lemma2_check(
    a: &SetPrefix,
    threshold: u64,
    m_max: u64,
    i_max: u32,
) -> Result<VerificationReport> {
    if threshold == 0 {
        return Err(Error::ZeroThreshold);
    }
    if i_max >= 63 {
        return Err(Error::InvalidParameter("i_max must be below 63"));
    }
    let span = 1u64 << i_max;
    let need = m_max
        .checked_mul(span)
        .and_then(|v| v.checked_add(span - 1))
        .ok_or(Error::InvalidParameter("grid exceeds u64"))?;
    a.require(need)?;
    let mut failures = Vec::new();
    for m in threshold..=m_max {
        let parent = a.contains(m);
        for i in 0..=i_max {
            let base = m << i;
            for k in 0..(1u64 << i) {
                let required = parent == thue_morse_member(k);
                let observed = a.contains(base + k);
                if observed != required {
                    failures.push(Failure {
                        n: base + k,
                        lhs: observed.into(),
                        rhs: required.into(),
                    });
                }
            }
        }
    }
    Ok(VerificationReport::new(threshold, m_max, failures))
}

/// Block-structure report; `report.failures` lists one entry per bad block
/// as `(j, mismatched positions, 0)`.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct BlockReport {
    pub k0: u32,
    pub k: u32,
    pub report: VerificationReport,
}

/// For each `j` with `2^k0 <= j <= floor(bound / 2^k) - 1`, checks that
/// `(A ∩ [j 2^k, (j+1) 2^k)) - j 2^k` is `A0 ∩ [0, 2^k - 1]` when `j ∈ A`
/// and `B0 ∩ [0, 2^k - 1]` otherwise.
pub fn block_structure_check(a: &SetPrefix, spec: &PartitionSpec, k: u32) -> Result<BlockReport> {
    if spec.variant != Variant::R2 {
        return Err(Error::VariantMismatch);
    }
    if k == 0 || k >= 40 {
        return Err(Error::InvalidParameter("block exponent k must be in 1..40"));
    }
    let k0 = spec.k0();
    let width = 1u64 << k;
    let first = 1u64 << k0;
    let need = (first + 1) * width;
    a.require(need)?;
    let last = a.bound() / width - 1;
    let mut failures = Vec::new();
    for j in first..=last {
        let flip = !a.contains(j);
        let start = j * width;
        let mismatches = (0..width)
            .filter(|&c| a.contains(start + c) != (thue_morse_member(c) != flip))
            .count() as u64;
        if mismatches > 0 {
            failures.push(Failure {
                n: j,
                lhs: mismatches,
                rhs: 0,
            });
        }
    }
    Ok(BlockReport {
        k0,
        k,
        report: VerificationReport::new(first, last, failures),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn tm(bound: u64) -> SetPrefix {
        SetPrefix::thue_morse(bound).unwrap()
    }

    #[test]
    fn spec_validation() {
        assert_eq!(
            PartitionSpec::new(Variant::R2, 0, vec![]),
            Err(Error::ZeroThreshold)
        );
        assert_eq!(
            PartitionSpec::new(Variant::R2, 2, vec![true, false, false]),
            Err(Error::InitialLength {
                expected: 4,
                found: 3
            })
        );
        assert_eq!(
            PartitionSpec::new(Variant::R2, 1, vec![true, true]),
            Err(Error::InitialWeight {
                expected: 1,
                found: 2
            })
        );
    }

    #[test]
    fn extension_examples() {
        let a = extend_partition(&PartitionSpec::unit(Variant::R2), 15).unwrap();
        assert_eq!(a.members().collect::<Vec<_>>(), [0, 3, 5, 6, 9, 10, 12, 15]);
        let b = extend_partition(&PartitionSpec::unit(Variant::R3), 7).unwrap();
        assert_eq!(b.members().collect::<Vec<_>>(), [0, 2, 5, 6]);
        let spec = PartitionSpec::new(Variant::R2, 1, vec![false, true]).unwrap();
        let c = extend_partition(&spec, 3).unwrap();
        assert_eq!(c.members().collect::<Vec<_>>(), [1, 2]);
        assert_eq!(
            extend_partition(&PartitionSpec::unit(Variant::R2), 0),
            Err(Error::ExtensionTooShort { x: 0, min: 1 })
        );
    }

    #[test]
    fn extension_is_prefix_stable() {
        let spec = PartitionSpec::new(Variant::R2, 3, vec![true, false, false, true, true, false]).unwrap();
        let long = extend_partition(&spec, 5000).unwrap();
        for x in [5u64, 6, 63, 64, 1000, 4999] {
            assert_eq!(long.truncate(x).unwrap(), extend_partition(&spec, x).unwrap());
        }
    }

    #[test]
    fn balanced_initials_enumeration() {
        assert_eq!(balanced_initials(1), vec![vec![false, true], vec![true, false]]);
        assert_eq!(balanced_initials(2).len(), 6);
        assert_eq!(balanced_initials(3).len(), 20);
        let all = balanced_initials(3);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn k0_formula() {
        for n in 1..=1000u64 {
            let k0 = block_offset_exponent(n);
            // 2^(k0-2) < N <= 2^(k0-1), written without fractional powers
            assert!(4 * n > (1u64 << k0), "N={n}");
            assert!(2 * n <= (1u64 << k0), "N={n}");
        }
        assert_eq!(block_offset_exponent(1), 1);
        assert_eq!(block_offset_exponent(2), 2);
        assert_eq!(block_offset_exponent(3), 3);
    }

    #[test]
    fn verify_examples() {
        let a0 = tm(4096);
        assert!(verify_equality(&a0, 1, 4096, Variant::R2).unwrap().passed);
        let cw = extend_partition(&PartitionSpec::unit(Variant::R3), 4096).unwrap();
        assert!(verify_equality(&cw, 1, 4096, Variant::R3).unwrap().passed);
        let broken = a0.with_flipped(5).unwrap();
        let report = verify_equality(&broken, 1, 4096, Variant::R2).unwrap();
        assert!(!report.passed);
        assert_eq!(report.failures[0].n, 5);
        assert_eq!(report.checked_range, CheckedRange { lo: 1, hi: 4096 });
        assert!(verify_equality(&a0, 1, 4097, Variant::R2).is_err());
    }

    #[test]
    fn digit_rule_examples() {
        let a0 = tm(1024);
        assert_eq!(check_digit_rules(&a0, 1, 1024, Variant::R2), Ok(true));
        assert_eq!(check_digit_rules(&a0, 1, 1024, Variant::R3), Ok(false));
        let spec = PartitionSpec::new(Variant::R2, 2, vec![false, true, true, false]).unwrap();
        let a = extend_partition(&spec, 1024).unwrap();
        assert_eq!(check_digit_rules(&a, 2, 1024, Variant::R2), Ok(true));
        assert_eq!(check_digit_rules(&a.with_flipped(0).unwrap(), 2, 1024, Variant::R2), Ok(false));
    }

    #[test]
    fn extension_rule_examples() {
        let need = 256 * 256 + 255;
        let a0 = tm(need);
        let r = lemma2_check(&a0, 1, 256, 8).unwrap();
        assert!(r.passed);
        let spec = PartitionSpec::new(Variant::R2, 2, vec![true, true, false, false]).unwrap();
        let a = extend_partition(&spec, need).unwrap();
        assert!(lemma2_check(&a, 2, 256, 8).unwrap().passed);
        let broken = a.with_flipped(777).unwrap();
        let r = lemma2_check(&broken, 2, 256, 8).unwrap();
        assert!(!r.passed);
        assert!(r.failures.iter().any(|f| f.n == 777));
        assert!(lemma2_check(&tm(need - 1), 1, 256, 8).is_err());
    }

    #[test]
    fn block_examples() {
        let spec = PartitionSpec::unit(Variant::R2);
        let a0 = tm(1 << 12);
        let r = block_structure_check(&a0, &spec, 6).unwrap();
        assert!(r.report.passed);
        assert_eq!(r.k0, 1);

        let spec = PartitionSpec::new(Variant::R2, 3, vec![false, true, true, false, true, false]).unwrap();
        let a = extend_partition(&spec, 1 << 12).unwrap();
        let r = block_structure_check(&a, &spec, 5).unwrap();
        assert!(r.report.passed);
        assert_eq!(r.k0, 3);
        assert_eq!(r.report.checked_range, CheckedRange { lo: 8, hi: 127 });

        let corrupted = a.with_flipped(40 * 32 + 7).unwrap();
        let r = block_structure_check(&corrupted, &spec, 5).unwrap();
        assert_eq!(r.report.failures, vec![Failure { n: 40, lhs: 1, rhs: 0 }]);

        assert_eq!(
            block_structure_check(&a0, &PartitionSpec::unit(Variant::R3), 6),
            Err(Error::VariantMismatch)
        );
        assert!(block_structure_check(&tm(100), &PartitionSpec::unit(Variant::R2), 6).is_err());
    }
}
