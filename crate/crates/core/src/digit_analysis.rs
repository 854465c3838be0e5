//! Digit-block machinery behind the `n/8` concentration of `R2(A0, n)`.
//!
//! For a target `n`, the marked blocks are the `t` with
//! `(ε_{3t}, ε_{3t+1}, ε_{3t+2}) = (1,0,1)`. Pairs `y + z = n`, `y < z`, are
//! sorted into `S(n)` by the first marked block where `z` reads `(0,0,1)` or
//! `(0,1,0)`, and into `T(n)` by the least site `L` where the five digits
//! `(ε_{L+1}^y, ε_{L+2}^y, ε_L^z, ε_{L+1}^z, ε_{L+2}^z)` read `(0,0,0,0,1)` or
//! `(1,0,0,1,0)`. Moving `2^{L+1}` between `y` and `z` swaps the two
//! patterns and flips the parity of `popcount(y) + popcount(z)`, which is
//! what balances the four Thue–Morse classes of `T(n)`.

use alloc::vec::Vec;

use crate::digits::{bit, bit_length, digit_block, high_part, popcount, thue_morse_member};
use crate::error::{Error, Result};

const MARKED: [u8; 3] = [1, 0, 1];

/// `f(n)` and the ascending block indices `k_1 < … < k_f` where `n` reads
/// `(1,0,1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct DigitProfile {
    pub n: u64,
    pub f: u32,
    pub positions: Vec<u32>,
}

/// `f(n)` without materializing the positions.
pub fn f_count(n: u64) -> u32 {
    (0..bit_length(n).div_ceil(3))
        .filter(|&t| digit_block(n, t) == MARKED)
        .count() as u32
}

pub fn f_profile(n: u64) -> DigitProfile {
    let blocks = bit_length(n).div_ceil(3);
    let positions: Vec<u32> = (0..blocks).filter(|&t| digit_block(n, t) == MARKED).collect();
    DigitProfile {
        n,
        f: positions.len() as u32,
        positions,
    }
}

/// `z ∈ P_t`: block `t` of `z` is `(0,0,1)` or `(0,1,0)`.
pub fn in_p(z: u64, t: u32) -> bool {
    matches!(digit_block(z, t), [0, 0, 1] | [0, 1, 0])
}

/// `(y, z) ∈ Q_t`: the digits of `y` from position `3t+3` up form a smaller
/// number than those of `z`.
pub fn in_q(y: u64, z: u64, t: u32) -> bool {
    let shift = t.saturating_mul(3).saturating_add(3);
    high_part(y, shift) < high_part(z, shift)
}

/// Thue–Morse class of a pair, `(y ∈ A0 ?, z ∈ A0 ?)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum ParityClass {
    AA,
    BB,
    AB,
    BA,
}

impl ParityClass {
    pub fn of(y: u64, z: u64) -> Self {
        match (thue_morse_member(y), thue_morse_member(z)) {
            (true, true) => ParityClass::AA,
            (false, false) => ParityClass::BB,
            (true, false) => ParityClass::AB,
            (false, true) => ParityClass::BA,
        }
    }

    /// `popcount(y) + popcount(z)` is even.
    pub fn is_even(self) -> bool {
        matches!(self, ParityClass::AA | ParityClass::BB)
    }
}

/// The two five-digit patterns that define a toggle site.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum SitePattern {
    /// `(0,0,0,0,1)`: `2^{L+1}` can move from `z` to `y`.
    Low,
    /// `(1,0,0,1,0)`: `2^{L+1}` can move from `y` to `z`.
    High,
}

impl SitePattern {
    pub fn digits(self) -> [u8; 5] {
        match self {
            SitePattern::Low => [0, 0, 0, 0, 1],
            SitePattern::High => [1, 0, 0, 1, 0],
        }
    }

    pub fn opposite(self) -> Self {
        match self {
            SitePattern::Low => SitePattern::High,
            SitePattern::High => SitePattern::Low,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ToggleSite {
    pub l: u32,
    pub pattern: SitePattern,
}

/// A representation `n = y + z`, `y < z`, with its least toggle site (if
/// any), its `T(n)` membership and its Thue–Morse class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct RepPair {
    pub y: u64,
    pub z: u64,
    pub site: Option<ToggleSite>,
    pub in_t: bool,
    pub class: ParityClass,
}

impl RepPair {
    pub fn n(&self) -> u64 {
        self.y + self.z
    }
}

/// The five digits `(ε_{i+1}^y, ε_{i+2}^y, ε_i^z, ε_{i+1}^z, ε_{i+2}^z)`.
pub fn site_digits(y: u64, z: u64, i: u32) -> [u8; 5] {
    [bit(y, i + 1), bit(y, i + 2), bit(z, i), bit(z, i + 1), bit(z, i + 2)]
}

/// Least `i` whose five digits match either pattern.
pub fn least_site(y: u64, z: u64) -> Option<ToggleSite> {
    // Low needs ε_{i+2}^z = 1 and High needs ε_{i+1}^y = 1, so i + 1 < 64.
    (0..63u32).find_map(|l| {
        let d = site_digits(y, z, l);
        if d == SitePattern::Low.digits() {
            Some(ToggleSite {
                l,
                pattern: SitePattern::Low,
            })
        } else if d == SitePattern::High.digits() {
            Some(ToggleSite {
                l,
                pattern: SitePattern::High,
            })
        } else {
            None
        }
    })
}

/// Classifies `(y, z)` as a representation of `n`.
///
/// `(y, z) ∈ T(n)` iff a least site `L` exists and `⌊y/2^{L+3}⌋ < ⌊z/2^{L+3}⌋`.
/// Digits above the bit length of `n` vanish for both parts, so comparing
/// whole high parts is the same as summing up to any larger digit index.
pub fn classify_pair(y: u64, z: u64, n: u64) -> Result<RepPair> {
    if y >= z || y.checked_add(z) != Some(n) {
        return Err(Error::InvalidPair { y, z, n });
    }
    let site = least_site(y, z);
    let in_t = site.is_some_and(|s| high_part(y, s.l + 3) < high_part(z, s.l + 3));
    Ok(RepPair {
        y,
        z,
        site,
        in_t,
        class: ParityClass::of(y, z),
    })
}

/// `|S_1|`, `|S_2|`, `|S_3|` and `|S(n)| = |S_1| - |S_2| - |S_3|`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SDecomposition {
    pub s1: u64,
    pub s2: u64,
    pub s3: u64,
    pub s: u64,
}

impl SDecomposition {
    /// `s = s1 - s2 - s3`.
    pub fn holds(&self) -> bool {
        self.s2.checked_add(self.s3).and_then(|v| self.s1.checked_sub(v)) == Some(self.s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SEnumeration {
    pub n: u64,
    pub profile: DigitProfile,
    pub members: Vec<RepPair>,
    pub decomposition: SDecomposition,
}

/// Enumerates `S(n)` and counts the three pair classes it is carved from.
///
/// The marked blocks are scanned in ascending order; for each pair the first
/// block with `z ∈ P_{k_t}` decides: no such block counts towards `S_2`, a
/// block whose `Q_{k_t}` test fails counts towards `S_3`, otherwise the pair
/// is in `S(n)`. `s1` comes from the closed form `⌊(n+1)/2⌋` and `s` from
/// the member list, so [`SDecomposition::holds`] is a genuine check.
pub fn enumerate_s(n: u64) -> Result<SEnumeration> {
    let profile = f_profile(n);
    if profile.f == 0 || n == 0 {
        return Err(Error::NoMarkedBlocks { n });
    }
    let s1 = n.div_ceil(2);
    let (mut s2, mut s3) = (0u64, 0u64);
    let mut members = Vec::new();
    for y in (0..=n).take_while(|&y| y < n - y) {
        let z = n - y;
        match profile.positions.iter().copied().find(|&k| in_p(z, k)) {
            None => s2 += 1,
            Some(k) if !in_q(y, z, k) => s3 += 1,
            Some(_) => members.push(classify_pair(y, z, n)?),
        }
    }
    let decomposition = SDecomposition {
        s1,
        s2,
        s3,
        s: members.len() as u64,
    };
    Ok(SEnumeration {
        n,
        profile,
        members,
        decomposition,
    })
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ClassCounts {
    pub aa: u64,
    pub bb: u64,
    pub ab: u64,
    pub ba: u64,
}

impl ClassCounts {
    pub fn add(&mut self, class: ParityClass) {
        match class {
            ParityClass::AA => self.aa += 1,
            ParityClass::BB => self.bb += 1,
            ParityClass::AB => self.ab += 1,
            ParityClass::BA => self.ba += 1,
        }
    }

    pub fn total(&self) -> u64 {
        self.aa + self.bb + self.ab + self.ba
    }

    /// `|T_AA| + |T_BB| = |T_AB| + |T_BA|`.
    pub fn balanced(&self) -> bool {
        self.aa + self.bb == self.ab + self.ba
    }
}

/// `T(n)` with its members and per-class counts.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PairClassification {
    pub n: u64,
    pub members: Vec<RepPair>,
    pub counts: ClassCounts,
}

pub fn enumerate_t(n: u64) -> PairClassification {
    let mut counts = ClassCounts::default();
    let members: Vec<RepPair> = (0..n.div_ceil(2))
        .filter_map(|y| classify_pair(y, n - y, n).ok())
        .filter(|p| p.in_t)
        .inspect(|p| counts.add(p.class))
        .collect();
    PairClassification { n, members, counts }
}

/// Moves `2^{L+1}` across the pair at its least site.
///
/// `(1,0,0,1,0)` maps to `(y - 2^{L+1}, z + 2^{L+1})` and `(0,0,0,0,1)` to
/// `(y + 2^{L+1}, z - 2^{L+1})`. The image is reclassified from scratch.
pub fn toggle(p: &RepPair) -> Result<RepPair> {
    let site = match p.site {
        Some(site) if p.in_t => site,
        _ => return Err(Error::NotInT { y: p.y, z: p.z }),
    };
    let step = 1u64 << (site.l + 1);
    let (y, z) = match site.pattern {
        SitePattern::High => (p.y - step, p.z + step),
        SitePattern::Low => (p.y + step, p.z - step),
    };
    classify_pair(y, z, p.n())
}

/// Total popcount of the pair.
pub fn pair_weight(y: u64, z: u64) -> u32 {
    popcount(y) + popcount(z)
}
