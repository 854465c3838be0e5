//! Extremes of `R(A, n) / n` over windows of targets.

use alloc::vec::Vec;

use crate::density::{dyadic_windows, Window};
use crate::error::{Error, Result};
use crate::partition::{Failure, VerificationReport};
use crate::prefix::{Limits, SetPrefix};
use crate::repfn::{r2, range, CounterKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Extreme {
    Min,
    Max,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ExtremeRecord {
    pub n: u64,
    pub ratio: f64,
    pub kind: Extreme,
    pub counter_kind: CounterKind,
    pub window: Window,
}

/// How targets `1..=x` are grouped.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Windowing {
    /// Consecutive runs of the given length starting at 1.
    Fixed(u64),
    /// `(x/2^(i+1), x/2^i]`, the same windows the density report uses.
    Dyadic,
}

impl Windowing {
    pub fn windows(self, x: u64) -> Result<Vec<Window>> {
        match self {
            Windowing::Fixed(0) => Err(Error::InvalidParameter("window size must be >= 1")),
            Windowing::Fixed(size) => {
                let mut out = Vec::new();
                let mut lo = 0;
                while lo < x {
                    let hi = lo.saturating_add(size).min(x);
                    out.push(Window { lo, hi });
                    lo = hi;
                }
                Ok(out)
            }
            Windowing::Dyadic => Ok(dyadic_windows(x)),
        }
    }
}

/// `R2(A0, 2^(2l+1) - 1) = 0` for `0 <= l <= l_max`. Failures carry
/// `(n, R2(A0, n), 0)`.
pub fn allones_zero_check(l_max: u32) -> Result<VerificationReport> {
    allones_zero_check_with(l_max, &Limits::default())
}

pub fn allones_zero_check_with(l_max: u32, limits: &Limits) -> Result<VerificationReport> {
    if l_max > 30 {
        return Err(Error::InvalidParameter("l_max must be at most 30"));
    }
    let top = (1u64 << (2 * l_max + 1)) - 1;
    let a0 = SetPrefix::thue_morse_with(top, limits)?;
    let mut failures = Vec::new();
    for l in 0..=l_max {
        let n = (1u64 << (2 * l + 1)) - 1;
        let c = r2(&a0, n)?;
        if c != 0 {
            failures.push(Failure { n, lhs: c, rhs: 0 });
        }
    }
    Ok(VerificationReport::new(0, u64::from(l_max), failures))
}

/// Per window, the targets minimizing and maximizing `counts[n] / n`.
/// Ties go to the smallest `n`. Empty windows produce no records.
pub fn extremal_from_counts(
    counts: &[u32],
    windowing: Windowing,
    kind: CounterKind,
) -> Result<Vec<ExtremeRecord>> {
    let x = counts.len().saturating_sub(1) as u64;
    let mut out = Vec::new();
    for window in windowing.windows(x)? {
        let mut best: Option<((u64, f64), (u64, f64))> = None;
        for n in window.targets() {
            let ratio = f64::from(counts[n as usize]) / n as f64;
            best = Some(match best {
                None => ((n, ratio), (n, ratio)),
                Some((lo, hi)) => (
                    if ratio < lo.1 { (n, ratio) } else { lo },
                    if ratio > hi.1 { (n, ratio) } else { hi },
                ),
            });
        }
        if let Some(((min_n, min_r), (max_n, max_r))) = best {
            out.push(ExtremeRecord {
                n: min_n,
                ratio: min_r,
                kind: Extreme::Min,
                counter_kind: kind,
                window,
            });
            out.push(ExtremeRecord {
                n: max_n,
                ratio: max_r,
                kind: Extreme::Max,
                counter_kind: kind,
                window,
            });
        }
    }
    Ok(out)
}

pub fn extremal_scan(
    a: &SetPrefix,
    x: u64,
    windowing: Windowing,
    kind: CounterKind,
) -> Result<Vec<ExtremeRecord>> {
    let counts = range(a, x, kind, &Limits::default())?;
    extremal_from_counts(&counts, windowing, kind)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn allones_examples() {
        let r = allones_zero_check(2).unwrap();
        assert!(r.passed);
        assert_eq!(r.checked_range.hi, 2);
        assert!(allones_zero_check(31).is_err());
        let tight = Limits { max_elements: 100 };
        assert!(allones_zero_check_with(3, &tight).is_err());
    }

    #[test]
    fn single_window_scan() {
        let a0 = SetPrefix::thue_morse(16).unwrap();
        let recs = extremal_scan(&a0, 16, Windowing::Fixed(16), CounterKind::R2).unwrap();
        assert_eq!(recs.len(), 2);
        assert_eq!(recs[0].kind, Extreme::Min);
        assert_eq!(recs[0].n, 1);
        assert_eq!(recs[0].ratio, 0.0);
        assert_eq!(recs[0].window, Window { lo: 0, hi: 16 });
        // R2(A0, n), n = 0..=16: 0 0 0 1 0 1 1 0 1 2 1 1 2 1 1 4 1
        assert_eq!(recs[1].kind, Extreme::Max);
        assert_eq!(recs[1].n, 3);
    }

    #[test]
    fn empty_set_ratios_are_zero() {
        let e = SetPrefix::empty(100).unwrap();
        let recs = extremal_scan(&e, 100, Windowing::Fixed(7), CounterKind::R2).unwrap();
        assert_eq!(recs.len(), 2 * 15);
        assert!(recs.iter().all(|r| r.ratio == 0.0));
        // ties: smallest n wins for both extremes
        assert!(recs.iter().all(|r| r.n == r.window.lo + 1));
    }

    #[test]
    fn windowing_validation() {
        assert!(Windowing::Fixed(0).windows(10).is_err());
        let ws = Windowing::Fixed(4).windows(10).unwrap();
        assert_eq!(ws, [Window { lo: 0, hi: 4 }, Window { lo: 4, hi: 8 }, Window { lo: 8, hi: 10 }]);
    }

    #[test]
    fn dyadic_minima_hit_all_ones_targets() {
        let x = 1u64 << 12;
        let a0 = SetPrefix::thue_morse(x).unwrap();
        let recs = extremal_scan(&a0, x, Windowing::Dyadic, CounterKind::R2).unwrap();
        for r in &recs {
            assert!(r.ratio >= 0.0);
            assert!(r.ratio <= (r.n as f64 / 2.0 + 1.0) / r.n as f64);
        }
        let minima: Vec<u64> = recs.iter().filter(|r| r.kind == Extreme::Min).map(|r| r.n).collect();
        for l in 0..6 {
            let n = (1u64 << (2 * l + 1)) - 1;
            assert!(minima.contains(&n), "n={n} minima={minima:?}");
        }
    }
}
