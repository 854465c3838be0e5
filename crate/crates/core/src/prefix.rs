//! Membership bitmaps of `A ∩ [0, x]`.

use alloc::vec;
use alloc::vec::Vec;

use crate::digits::{thue_morse_member, ODD_PARITY_WORD};
use crate::error::{Error, Result};

/// Default ceiling on the number of elements a prefix or range may span.
pub const DEFAULT_CEILING: u64 = 1 << 26;

/// Resource limits applied before any large allocation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest admissible `x + 1`.
    pub max_elements: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Self {
            max_elements: DEFAULT_CEILING,
        }
    }
}

impl Limits {
    pub const UNLIMITED: Limits = Limits {
        max_elements: u64::MAX,
    };

    pub fn check(&self, bound: u64) -> Result<()> {
        let requested = bound.saturating_add(1);
        if requested > self.max_elements {
            return Err(Error::ResourceCeiling {
                requested,
                ceiling: self.max_elements,
            });
        }
        Ok(())
    }
}

pub(crate) fn words_for(bound: u64) -> usize {
    (bound / 64 + 1) as usize
}

/// The restriction of a set `A ⊆ ℕ` to `[0, bound]`, stored as a bitmap.
///
/// Bit `m` is set iff `m ∈ A`. Bits above `bound` in the last word are
/// always clear, so word-level operations never see phantom members.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SetPrefix {
    bound: u64,
    words: Vec<u64>,
}

impl core::fmt::Debug for SetPrefix {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("SetPrefix")
            .field("bound", &self.bound)
            .field("len", &self.len())
            .finish()
    }
}

impl SetPrefix {
    fn zeroed(bound: u64, limits: &Limits) -> Result<Self> {
        limits.check(bound)?;
        Ok(Self {
            bound,
            words: vec![0; words_for(bound)],
        })
    }

    pub fn empty(bound: u64) -> Result<Self> {
        Self::zeroed(bound, &Limits::default())
    }

    pub fn full(bound: u64) -> Result<Self> {
        Self::empty(bound).map(|p| p.complement())
    }

    /// Builds the prefix from a membership predicate.
    pub fn from_fn(bound: u64, mut member: impl FnMut(u64) -> bool) -> Result<Self> {
        let mut prefix = Self::empty(bound)?;
        for m in 0..=bound {
            if member(m) {
                prefix.insert(m);
            }
        }
        Ok(prefix)
    }

    /// Builds the prefix from explicit members; members above `bound` are
    /// rejected rather than dropped.
    pub fn from_members(bound: u64, members: impl IntoIterator<Item = u64>) -> Result<Self> {
        let mut prefix = Self::empty(bound)?;
        for m in members {
            if m > bound {
                return Err(Error::OutOfBounds {
                    requested: m,
                    bound,
                });
            }
            prefix.insert(m);
        }
        Ok(prefix)
    }

    /// Builds a prefix from little-endian bools: `bits[m]` is membership of `m`.
    pub fn from_bools(bits: &[bool]) -> Result<Self> {
        if bits.is_empty() {
            return Err(Error::InvalidParameter("empty membership vector"));
        }
        Self::from_fn(bits.len() as u64 - 1, |m| bits[m as usize])
    }

    /// `A0 ∩ [0, bound]`, filled a word at a time.
    pub fn thue_morse(bound: u64) -> Result<Self> {
        Self::thue_morse_with(bound, &Limits::default())
    }

    pub fn thue_morse_with(bound: u64, limits: &Limits) -> Result<Self> {
        let mut prefix = Self::zeroed(bound, limits)?;
        for (w, word) in prefix.words.iter_mut().enumerate() {
            // popcount(64w + j) = popcount(w) + popcount(j)
            *word = if thue_morse_member(w as u64) {
                !ODD_PARITY_WORD
            } else {
                ODD_PARITY_WORD
            };
        }
        prefix.clear_tail();
        Ok(prefix)
    }

    pub fn empty_with(bound: u64, limits: &Limits) -> Result<Self> {
        Self::zeroed(bound, limits)
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }

    /// Number of members in `[0, bound]`.
    pub fn len(&self) -> u64 {
        self.words.iter().map(|w| u64::from(w.count_ones())).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    /// Membership of `m`; `None` when `m` lies beyond the prefix.
    pub fn get(&self, m: u64) -> Option<bool> {
        (m <= self.bound).then(|| self.contains(m))
    }

    /// Membership of `m`.
    ///
    /// Panics if `m > bound`; use [`SetPrefix::get`] for a checked query.
    #[inline]
    pub fn contains(&self, m: u64) -> bool {
        assert!(m <= self.bound, "index {m} beyond prefix bound {}", self.bound);
        (self.words[(m / 64) as usize] >> (m % 64)) & 1 == 1
    }

    /// Number of members in `[lo, hi]` (inclusive, clamped to the prefix).
    pub fn count_in(&self, lo: u64, hi: u64) -> u64 {
        let hi = hi.min(self.bound);
        (lo..=hi).filter(|&m| self.contains(m)).count() as u64
    }

    pub fn members(&self) -> impl Iterator<Item = u64> + '_ {
        self.words.iter().enumerate().flat_map(|(w, &word)| {
            let mut rest = word;
            core::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let j = rest.trailing_zeros() as u64;
                rest &= rest - 1;
                Some(w as u64 * 64 + j)
            })
        })
    }

    /// `(ℕ \ A) ∩ [0, bound]`.
    pub fn complement(&self) -> Self {
        let mut out = Self {
            bound: self.bound,
            words: self.words.iter().map(|w| !w).collect(),
        };
        out.clear_tail();
        out
    }

    /// The same set restricted to `[0, bound]` with `bound <= self.bound`.
    pub fn truncate(&self, bound: u64) -> Result<Self> {
        if bound > self.bound {
            return Err(Error::OutOfBounds {
                requested: bound,
                bound: self.bound,
            });
        }
        let mut out = Self {
            bound,
            words: self.words[..words_for(bound)].to_vec(),
        };
        out.clear_tail();
        Ok(out)
    }

    /// A copy with membership of `m` inverted.
    pub fn with_flipped(&self, m: u64) -> Result<Self> {
        if m > self.bound {
            return Err(Error::OutOfBounds {
                requested: m,
                bound: self.bound,
            });
        }
        let mut out = self.clone();
        out.words[(m / 64) as usize] ^= 1 << (m % 64);
        Ok(out)
    }

    pub(crate) fn insert(&mut self, m: u64) {
        self.words[(m / 64) as usize] |= 1 << (m % 64);
    }

    pub(crate) fn set(&mut self, m: u64, member: bool) {
        let mask = 1u64 << (m % 64);
        let word = &mut self.words[(m / 64) as usize];
        if member {
            *word |= mask;
        } else {
            *word &= !mask;
        }
    }

    fn clear_tail(&mut self) {
        let used = (self.bound % 64) + 1;
        if used < 64 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << used) - 1;
            }
        }
    }

    pub(crate) fn require(&self, n: u64) -> Result<()> {
        if n > self.bound {
            Err(Error::OutOfBounds {
                requested: n,
                bound: self.bound,
            })
        } else {
            Ok(())
        }
    }
}

/// `(ℕ \ A) ∩ [0, bound]` for the prefix `A`.
pub fn complement_prefix(a: &SetPrefix) -> SetPrefix {
    a.complement()
}
