//! Representation functions `R2`, `R3` and `R_{A,B}`.
//!
//! Pointwise counts walk the pairs one bit at a time and serve as the
//! reference. Range counts go through [`RangeEngine`], which for each target
//! `n` ANDs the left bitmap against the right bitmap reversed about `n`, a
//! machine word at a time, and accumulates popcounts.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::prefix::{words_for, Limits, SetPrefix};

/// Which representation function a count refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum CounterKind {
    /// `a + a' = n` with `a < a'`.
    R2,
    /// `a + a' = n` with `a <= a'`.
    R3,
}

/// Pairs `(a, a')`, `a < a'`, `a + a' = n`, both in `A`.
pub fn r2(a: &SetPrefix, n: u64) -> Result<u64> {
    a.require(n)?;
    if n == 0 {
        return Ok(0);
    }
    Ok(count_split(a, a, n, (n - 1) / 2))
}

/// Pairs `(a, a')`, `a <= a'`, `a + a' = n`, both in `A`.
pub fn r3(a: &SetPrefix, n: u64) -> Result<u64> {
    a.require(n)?;
    Ok(count_split(a, a, n, n / 2))
}

/// Ordered pairs `(a, b)` with `a ∈ A`, `b ∈ B`, `a + b = n`.
pub fn r_cross(a: &SetPrefix, b: &SetPrefix, n: u64) -> Result<u64> {
    a.require(n)?;
    b.require(n)?;
    Ok(count_split(a, b, n, n))
}

pub fn count(a: &SetPrefix, n: u64, kind: CounterKind) -> Result<u64> {
    match kind {
        CounterKind::R2 => r2(a, n),
        CounterKind::R3 => r3(a, n),
    }
}

fn count_split(a: &SetPrefix, b: &SetPrefix, n: u64, m_hi: u64) -> u64 {
    (0..=m_hi)
        .filter(|&m| a.contains(m) && b.contains(n - m))
        .count() as u64
}

/// How far the summation index `m` runs for a target `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Span {
    Strict,
    Weak,
    Ordered,
}

impl Span {
    /// Inclusive upper end of `m`, `None` when the range is empty.
    #[inline]
    fn upper(self, n: u64) -> Option<u64> {
        match self {
            Span::Strict => n.checked_sub(1).map(|v| v / 2),
            Span::Weak => Some(n / 2),
            Span::Ordered => Some(n),
        }
    }
}

/// Word-parallel counter for a whole range of targets `0..=top`.
///
/// Holds the left bitmap by reference and a reversed copy of the right
/// bitmap, `rev[i] = right[top - i]`. For target `n`, `right[n - m]` is bit
/// `top - n + m` of `rev`, so the count is a popcount of the left words
/// against a shifted window of `rev`. Immutable once built; `fill` may be
/// called from several threads on disjoint output slices.
#[derive(Debug)]
pub struct RangeEngine<'a> {
    left: &'a [u64],
    rev: Vec<u64>,
    top: u64,
    span: Span,
}

impl<'a> RangeEngine<'a> {
    fn build(
        left: &'a SetPrefix,
        right: &SetPrefix,
        top: u64,
        span: Span,
        limits: &Limits,
    ) -> Result<Self> {
        left.require(top)?;
        right.require(top)?;
        limits.check(top)?;
        // two spare words so an unaligned window never reads past the end
        let mut rev = vec![0u64; words_for(top) + 2];
        for m in right.members().take_while(|&m| m <= top) {
            let i = top - m;
            rev[(i / 64) as usize] |= 1 << (i % 64);
        }
        Ok(Self {
            left: left.words(),
            rev,
            top,
            span,
        })
    }

    pub fn new(a: &'a SetPrefix, x: u64, kind: CounterKind, limits: &Limits) -> Result<Self> {
        let span = match kind {
            CounterKind::R2 => Span::Strict,
            CounterKind::R3 => Span::Weak,
        };
        Self::build(a, a, x, span, limits)
    }

    pub fn cross(a: &'a SetPrefix, b: &SetPrefix, x: u64, limits: &Limits) -> Result<Self> {
        Self::build(a, b, x, Span::Ordered, limits)
    }

    /// Last target covered by this engine.
    pub fn top(&self) -> u64 {
        self.top
    }

    /// Count for a single target `n <= top`.
    pub fn at(&self, n: u64) -> u32 {
        assert!(n <= self.top, "target {n} beyond engine range {}", self.top);
        match self.span.upper(n) {
            None => 0,
            Some(m_hi) => self.window_count(self.top - n, m_hi),
        }
    }

    /// Writes the counts for targets `start, start + 1, …` into `out`.
    pub fn fill(&self, start: u64, out: &mut [u32]) {
        for (slot, n) in out.iter_mut().zip(start..) {
            *slot = self.at(n);
        }
    }

    /// All counts for `0..=top`.
    pub fn collect(&self) -> Vec<u32> {
        let mut out = vec![0u32; (self.top + 1) as usize];
        self.fill(0, &mut out);
        out
    }

    /// Popcount of `left[m] & rev[shift + m]` over `m in [0, m_hi]`.
    #[inline]
    fn window_count(&self, shift: u64, m_hi: u64) -> u32 {
        let len = m_hi + 1;
        let full = (len / 64) as usize;
        let rem = (len % 64) as u32;
        let q = (shift / 64) as usize;
        let r = (shift % 64) as u32;
        let rev = &self.rev[q..];
        let left = &self.left[..full + usize::from(rem > 0)];

        let window = |w: usize| -> u64 {
            if r == 0 {
                rev[w]
            } else {
                (rev[w] >> r) | (rev[w + 1] << (64 - r))
            }
        };

        let mut acc: u32 = if r == 0 {
            left[..full]
                .iter()
                .zip(&rev[..full])
                .map(|(a, b)| (a & b).count_ones())
                .sum()
        } else {
            left[..full]
                .iter()
                .zip(rev[..full + 1].windows(2))
                .map(|(a, pair)| (a & ((pair[0] >> r) | (pair[1] << (64 - r)))).count_ones())
                .sum()
        };
        if rem > 0 {
            let mask = (1u64 << rem) - 1;
            acc += (left[full] & window(full) & mask).count_ones();
        }
        acc
    }
}

fn range_check(a: &SetPrefix, x: u64) -> Result<()> {
    if x > a.bound() {
        return Err(Error::OutOfBounds {
            requested: x,
            bound: a.bound(),
        });
    }
    Ok(())
}

/// `R2(A, n)` for every `n` in `0..=x`.
pub fn r2_range(a: &SetPrefix, x: u64) -> Result<Vec<u32>> {
    range(a, x, CounterKind::R2, &Limits::default())
}

/// `R3(A, n)` for every `n` in `0..=x`.
pub fn r3_range(a: &SetPrefix, x: u64) -> Result<Vec<u32>> {
    range(a, x, CounterKind::R3, &Limits::default())
}

pub fn range(a: &SetPrefix, x: u64, kind: CounterKind, limits: &Limits) -> Result<Vec<u32>> {
    range_check(a, x)?;
    Ok(RangeEngine::new(a, x, kind, limits)?.collect())
}

/// `R_{A,B}(n)` for every `n` in `0..=x`.
pub fn r_cross_range(a: &SetPrefix, b: &SetPrefix, x: u64) -> Result<Vec<u32>> {
    range_check(a, x)?;
    range_check(b, x)?;
    Ok(RangeEngine::cross(a, b, x, &Limits::default())?.collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::prefix::complement_prefix;
    use proptest::prelude::*;

    /// All unordered pairs, no shortcuts.
    fn naive_r2(a: &SetPrefix, n: u64) -> u64 {
        let mut c = 0;
        for s in 0..=n {
            for t in s + 1..=n {
                if s + t == n && a.contains(s) && a.contains(t) {
                    c += 1;
                }
            }
        }
        c
    }

    #[test]
    fn pointwise_examples() {
        let a0 = SetPrefix::thue_morse(64).unwrap();
        assert_eq!(r2(&a0, 3), Ok(1));
        assert_eq!(r2(&a0, 0), Ok(0));
        assert_eq!(r2(&a0, 7), Ok(0));
        assert_eq!(r3(&a0, 0), Ok(1));
        assert_eq!(r3(&a0, 3), Ok(1));
        assert_eq!(r3(&a0, 6), Ok(2));
        let b0 = complement_prefix(&a0);
        // only (0, 1): the reversed pair would need 1 ∈ A0
        assert_eq!(r_cross(&a0, &b0, 1), Ok(1));
        assert_eq!(r_cross(&b0, &a0, 1), Ok(1));
        assert_eq!(r_cross(&a0, &a0, 0), Ok(1));
        let four = r_cross(&a0, &a0, 3).unwrap()
            + r_cross(&b0, &b0, 3).unwrap()
            + r_cross(&a0, &b0, 3).unwrap()
            + r_cross(&b0, &a0, 3).unwrap();
        assert_eq!(four, 4);
    }

    #[test]
    fn bound_violations_rejected() {
        let a0 = SetPrefix::thue_morse(10).unwrap();
        let err = Error::OutOfBounds {
            requested: 11,
            bound: 10,
        };
        assert_eq!(r2(&a0, 11), Err(err.clone()));
        assert_eq!(r3(&a0, 11), Err(err.clone()));
        assert_eq!(r2_range(&a0, 11), Err(err));
        let small = SetPrefix::thue_morse(5).unwrap();
        assert!(r_cross(&a0, &small, 6).is_err());
        assert!(r_cross_range(&a0, &small, 6).is_err());
    }

    #[test]
    fn range_examples() {
        let a0 = SetPrefix::thue_morse(8).unwrap();
        assert_eq!(r2_range(&a0, 8).unwrap(), [0, 0, 0, 1, 0, 1, 1, 0, 1]);
        let empty = SetPrefix::empty(8).unwrap();
        assert!(r2_range(&empty, 8).unwrap().iter().all(|&c| c == 0));
    }

    #[test]
    fn range_ceiling() {
        let a0 = SetPrefix::thue_morse(1000).unwrap();
        let limits = Limits { max_elements: 500 };
        assert_eq!(
            range(&a0, 1000, CounterKind::R2, &limits),
            Err(Error::ResourceCeiling {
                requested: 1001,
                ceiling: 500
            })
        );
        assert!(range(&a0, 499, CounterKind::R2, &limits).is_ok());
    }

    #[test]
    fn thue_morse_range_matches_pointwise() {
        let a0 = SetPrefix::thue_morse(4096).unwrap();
        let fast = r2_range(&a0, 4096).unwrap();
        for (n, &c) in fast.iter().enumerate() {
            assert_eq!(u64::from(c), r2(&a0, n as u64).unwrap(), "n={n}");
        }
    }

    #[test]
    fn naive_agrees_with_pointwise() {
        let a0 = SetPrefix::thue_morse(200).unwrap();
        for n in 0..=200 {
            assert_eq!(naive_r2(&a0, n), r2(&a0, n).unwrap());
        }
    }

    #[test]
    fn complement_identity_small() {
        let a0 = SetPrefix::thue_morse(1 << 12).unwrap();
        let b0 = complement_prefix(&a0);
        assert_eq!(r2_range(&a0, 1 << 12), r2_range(&b0, 1 << 12));
    }

    fn prefix_strategy() -> impl Strategy<Value = SetPrefix> {
        proptest::collection::vec(any::<bool>(), 1..300)
            .prop_map(|bits| SetPrefix::from_bools(&bits).unwrap())
    }

    proptest! {
        #[test]
        fn ranges_match_pointwise(a in prefix_strategy()) {
            let x = a.bound();
            let b = complement_prefix(&a);
            let f2 = r2_range(&a, x).unwrap();
            let f3 = r3_range(&a, x).unwrap();
            let fx = r_cross_range(&a, &b, x).unwrap();
            for n in 0..=x {
                prop_assert_eq!(u64::from(f2[n as usize]), r2(&a, n).unwrap());
                prop_assert_eq!(u64::from(f3[n as usize]), r3(&a, n).unwrap());
                prop_assert_eq!(u64::from(fx[n as usize]), r_cross(&a, &b, n).unwrap());
            }
        }

        #[test]
        fn counting_identities(a in prefix_strategy()) {
            let x = a.bound();
            let b = complement_prefix(&a);
            let r2a = r2_range(&a, x).unwrap();
            let r2b = r2_range(&b, x).unwrap();
            let r3a = r3_range(&a, x).unwrap();
            let aa = r_cross_range(&a, &a, x).unwrap();
            let bb = r_cross_range(&b, &b, x).unwrap();
            let ab = r_cross_range(&a, &b, x).unwrap();
            let ba = r_cross_range(&b, &a, x).unwrap();
            for n in 0..=x {
                let i = n as usize;
                let half = u32::from(n % 2 == 0 && a.contains(n / 2));
                prop_assert_eq!(r3a[i], r2a[i] + half);
                prop_assert_eq!(aa[i], 2 * r2a[i] + half);
                prop_assert_eq!(aa[i] + bb[i] + ab[i] + ba[i], n as u32 + 1);
                // pairs split between A and B, a < a'
                let split = (0..=n).filter(|&m| m < n - m && a.contains(m) != a.contains(n - m)).count() as u32;
                prop_assert_eq!(r2a[i] + r2b[i] + split, (n as u32).div_ceil(2));
            }
        }
    }
}
