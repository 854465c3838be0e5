//! Range counts split across the rayon pool.

use rayon::prelude::*;

use repfn_core::prefix::{Limits, SetPrefix};
use repfn_core::repfn::{CounterKind, RangeEngine};
use repfn_core::{Error, Result};

const CHUNK: usize = 1 << 12;

fn run(engine: &RangeEngine<'_>) -> Vec<u32> {
    let mut out = vec![0u32; engine.top() as usize + 1];
    out.par_chunks_mut(CHUNK)
        .enumerate()
        .for_each(|(i, chunk)| engine.fill((i * CHUNK) as u64, chunk));
    out
}

fn check(a: &SetPrefix, x: u64) -> Result<()> {
    if x > a.bound() {
        return Err(Error::OutOfBounds {
            requested: x,
            bound: a.bound(),
        });
    }
    Ok(())
}

/// Same output as [`repfn_core::repfn::range`].
pub fn range(a: &SetPrefix, x: u64, kind: CounterKind, limits: &Limits) -> Result<Vec<u32>> {
    check(a, x)?;
    Ok(run(&RangeEngine::new(a, x, kind, limits)?))
}

/// Same output as [`repfn_core::repfn::r_cross_range`].
pub fn cross_range(a: &SetPrefix, b: &SetPrefix, x: u64, limits: &Limits) -> Result<Vec<u32>> {
    check(a, x)?;
    check(b, x)?;
    Ok(run(&RangeEngine::cross(a, b, x, limits)?))
}
