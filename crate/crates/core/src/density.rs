//! Concentration of `R(A, n)` around `n/8`, measured per dyadic window.
//!
//! A target `n >= 1` is *good* for `(θ, C)` when
//! `|R(A, n) - n/8| <= C · n^(1-θ)`.

use alloc::vec::Vec;

use crate::digit_analysis::f_count;
use crate::error::{Error, Result};
use crate::prefix::{Limits, SetPrefix};
use crate::repfn::{count, range, CounterKind};

/// `|R - n/8| / n^(1-θ)` for a known count `R`.
pub fn normalized_deviation(count: u64, n: u64, theta: f64) -> f64 {
    let n_f = n as f64;
    libm::fabs(count as f64 - n_f / 8.0) / libm::pow(n_f, 1.0 - theta)
}

fn check_theta(theta: f64) -> Result<()> {
    // θ = 0 gives the plain relative deviation and is accepted.
    if (0.0..1.0).contains(&theta) {
        Ok(())
    } else {
        Err(Error::InvalidParameter("theta must lie in [0, 1)"))
    }
}

/// `|R(A, n) - n/8| / n^(1-θ)` with `R` chosen by `kind`.
pub fn deviation(a: &SetPrefix, n: u64, theta: f64, kind: CounterKind) -> Result<f64> {
    if n == 0 {
        return Err(Error::InvalidParameter("deviation needs n >= 1"));
    }
    check_theta(theta)?;
    Ok(normalized_deviation(count(a, n, kind)?, n, theta))
}

/// Half-open window `(lo, hi]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Window {
    pub lo: u64,
    pub hi: u64,
}

impl Window {
    pub fn len(&self) -> u64 {
        self.hi.saturating_sub(self.lo)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn targets(&self) -> core::ops::RangeInclusive<u64> {
        self.lo + 1..=self.hi
    }
}

/// `(x/2^(i+1), x/2^i]` for `i = 0, 1, …` while the window is non-empty,
/// top window first. Together they cover `[1, x]`.
pub fn dyadic_windows(x: u64) -> Vec<Window> {
    (0..u64::BITS)
        .map(|i| Window {
            lo: x >> (i + 1),
            hi: x >> i,
        })
        .take_while(|w| w.hi >= 1)
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct WindowStats {
    pub window_lo: u64,
    pub window_hi: u64,
    pub total: u64,
    pub good: u64,
    /// `good / total`; absent for an empty window.
    pub fraction: Option<f64>,
}

/// Largest normalized deviation among targets with a given `f(n)`.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct FSummary {
    pub f: u32,
    pub count: u64,
    pub max_deviation: f64,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct DensityReport {
    pub theta: f64,
    #[cfg_attr(feature = "serde", serde(rename = "C"))]
    pub c: f64,
    pub counter_kind: CounterKind,
    pub windows: Vec<WindowStats>,
    pub per_f: Vec<FSummary>,
}

impl DensityReport {
    /// Targets in `[1, x]` that fail the `(θ, C)` bound.
    pub fn bad_targets<'a>(&'a self, counts: &'a [u32]) -> impl Iterator<Item = u64> + 'a {
        (1..counts.len() as u64).filter(move |&n| {
            normalized_deviation(counts[n as usize].into(), n, self.theta) > self.c
        })
    }
}

/// Tallies one window from precomputed counts (`counts[n]` = `R(A, n)`).
pub fn window_stats(counts: &[u32], window: Window, theta: f64, c: f64) -> WindowStats {
    let good = window
        .targets()
        .filter(|&n| normalized_deviation(counts[n as usize].into(), n, theta) <= c)
        .count() as u64;
    let total = window.len();
    WindowStats {
        window_lo: window.lo,
        window_hi: window.hi,
        total,
        good,
        fraction: (total > 0).then(|| good as f64 / total as f64),
    }
}

/// Builds the report from `counts[n] = R(A, n)` for `n` in `0..=x`.
pub fn density_from_counts(
    counts: &[u32],
    theta: f64,
    c: f64,
    kind: CounterKind,
) -> Result<DensityReport> {
    check_theta(theta)?;
    if c.is_nan() || c <= 0.0 {
        return Err(Error::InvalidParameter("C must be positive"));
    }
    let x = counts.len().saturating_sub(1) as u64;
    let windows = dyadic_windows(x)
        .into_iter()
        .map(|w| window_stats(counts, w, theta, c))
        .collect();

    let mut per_f: Vec<FSummary> = Vec::new();
    for n in 1..=x {
        let f = f_count(n);
        let dev = normalized_deviation(counts[n as usize].into(), n, theta);
        if per_f.len() <= f as usize {
            per_f.extend((per_f.len() as u32..=f).map(|f| FSummary {
                f,
                count: 0,
                max_deviation: 0.0,
            }));
        }
        let slot = &mut per_f[f as usize];
        slot.count += 1;
        if dev > slot.max_deviation {
            slot.max_deviation = dev;
        }
    }
    per_f.retain(|s| s.count > 0);

    Ok(DensityReport {
        theta,
        c,
        counter_kind: kind,
        windows,
        per_f,
    })
}

pub fn density_profile(
    a: &SetPrefix,
    x: u64,
    theta: f64,
    c: f64,
    kind: CounterKind,
) -> Result<DensityReport> {
    let counts = range(a, x, kind, &Limits::default())?;
    density_from_counts(&counts, theta, c, kind)
}
