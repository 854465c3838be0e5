//! Binary digit primitives and Thue–Morse membership.
//!
//! All scalars are `u64`. Digits at positions at or beyond 64 read as zero,
//! so block and pattern scans never need to special-case the top of a word.

use core::fmt;

/// Bit `j` is set iff `popcount(j)` is odd.
pub(crate) const ODD_PARITY_WORD: u64 = 0x6996_9669_9669_6996;

/// Number of ones in the binary expansion of `n`.
#[inline]
pub fn popcount(n: u64) -> u32 {
    n.count_ones()
}

/// `true` iff `n` has an even number of ones, i.e. `n` lies in the
/// Thue–Morse set `A0`. The complement `B0` is the odd-popcount set.
#[inline]
pub fn thue_morse_member(n: u64) -> bool {
    popcount(n).is_multiple_of(2)
}

/// Digit `i` of `n`, zero for `i >= 64`.
#[inline]
pub fn bit(n: u64, i: u32) -> u8 {
    if i >= u64::BITS {
        0
    } else {
        ((n >> i) & 1) as u8
    }
}

/// `floor(n / 2^shift)`, zero once the shift passes the word.
#[inline]
pub(crate) fn high_part(n: u64, shift: u32) -> u64 {
    n.checked_shr(shift).unwrap_or(0)
}

/// Number of significant binary digits of `n` (zero for `n = 0`).
#[inline]
pub fn bit_length(n: u64) -> u32 {
    u64::BITS - n.leading_zeros()
}

/// Little-endian binary expansion of a `u64`.
///
/// The expansion is stored as the value itself; `len` is the bit length, so
/// `digit(i)` is zero for every `i >= len`. No allocation is involved.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct DigitVector {
    value: u64,
}

impl DigitVector {
    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn len(&self) -> usize {
        bit_length(self.value) as usize
    }

    pub fn is_empty(&self) -> bool {
        self.value == 0
    }

    pub fn digit(&self, i: u32) -> u8 {
        bit(self.value, i)
    }

    /// Digits `ε_0, ε_1, …` up to the bit length.
    pub fn iter(&self) -> impl Iterator<Item = u8> + '_ {
        (0..self.len() as u32).map(move |i| self.digit(i))
    }

    /// Rebuilds `Σ ε_i 2^i` from the digits.
    pub fn reconstruct(&self) -> u64 {
        self.iter()
            .enumerate()
            .fold(0u64, |acc, (i, d)| acc | (u64::from(d) << i))
    }
}

impl fmt::Debug for DigitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.iter()).finish()
    }
}

impl From<u64> for DigitVector {
    fn from(value: u64) -> Self {
        Self { value }
    }
}

pub fn digits(n: u64) -> DigitVector {
    DigitVector::from(n)
}

/// The block `(ε_{3t}, ε_{3t+1}, ε_{3t+2})` of `n`.
pub fn digit_block(n: u64, t: u32) -> [u8; 3] {
    let base = t.saturating_mul(3);
    [
        bit(n, base),
        bit(n, base.saturating_add(1)),
        bit(n, base.saturating_add(2)),
    ]
}
