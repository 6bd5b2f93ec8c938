//! Timing harness comparing the min-plus kernels against the double loop.
//!
//! The hot path runs on `i64` fixed-point values (rationals sharing the
//! denominator [`SCALE`]); a subsample of output indices is then recomputed
//! in exact rational arithmetic.

use std::time::Instant;

use rand::Rng;
use serde::Serialize;

use super::kernels::{convex_minplus_merge_counted, naive_minplus_counted, smawk_minplus_counted};
use crate::error::{Error, Result};
use crate::gen;
use crate::rational::{self, Rational};

/// Common denominator of the synthesized instances.
pub const SCALE: i64 = 64;

/// Output indices recomputed exactly per run.
const SUBSAMPLE: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BenchMode {
    Naive,
    ConvexMerge,
    Smawk,
}

impl std::str::FromStr for BenchMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "naive" => Ok(BenchMode::Naive),
            "convex-merge" | "merge" => Ok(BenchMode::ConvexMerge),
            "smawk" => Ok(BenchMode::Smawk),
            _ => Err(Error::parse("mode", format!("unknown mode {s:?} (naive, convex-merge, smawk)"))),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BenchReport {
    pub n: usize,
    pub mode: BenchMode,
    pub seed: u64,
    pub kernel_seconds: f64,
    pub naive_seconds: f64,
    pub speedup: f64,
    pub kernel_ops: u64,
    pub naive_ops: u64,
    /// Kernel output equals the fixed-point double loop at every index.
    pub matches_naive: bool,
    pub exact_indices_checked: usize,
    /// Subsampled indices agree with exact rational recomputation.
    pub exact_subsample_ok: bool,
}

/// Random convex sequence: sorted random slopes, integer fixed-point.
pub fn random_convex_fixed(rng: &mut impl Rng, len: usize) -> Vec<i64> {
    let mut slopes: Vec<i64> = (1..len).map(|_| rng.gen_range(-4 * SCALE..=4 * SCALE)).collect();
    slopes.sort_unstable();
    let mut out = Vec::with_capacity(len);
    let mut cur = rng.gen_range(-8 * SCALE..=8 * SCALE);
    out.push(cur);
    for s in slopes {
        cur += s;
        out.push(cur);
    }
    out
}

pub fn random_fixed(rng: &mut impl Rng, len: usize) -> Vec<i64> {
    (0..len).map(|_| rng.gen_range(-16 * SCALE..=16 * SCALE)).collect()
}

fn exact(v: i64) -> Rational {
    rational::ratio(v, SCALE)
}

/// Synthesizes an instance of length `n` for `mode`, times the kernel and
/// the double loop, and verifies a subsample exactly.
pub fn bench_minplus(n: usize, mode: BenchMode, seed: u64) -> Result<BenchReport> {
    if n == 0 {
        return Err(Error::invariant("n", "must be at least 1"));
    }
    let mut rng = gen::rng(seed);
    let a = match mode {
        BenchMode::ConvexMerge => random_convex_fixed(&mut rng, n),
        _ => random_fixed(&mut rng, n),
    };
    let b = random_convex_fixed(&mut rng, n);

    let t = Instant::now();
    let (naive, naive_ops) = naive_minplus_counted(&a, &b)?;
    let naive_seconds = t.elapsed().as_secs_f64();

    let t = Instant::now();
    let (out, kernel_ops) = match mode {
        BenchMode::Naive => naive_minplus_counted(&a, &b)?,
        BenchMode::ConvexMerge => convex_minplus_merge_counted(&a, &b)?,
        BenchMode::Smawk => smawk_minplus_counted(&a, &b)?,
    };
    let kernel_seconds = t.elapsed().as_secs_f64();

    let len = out.len();
    let mut indices: Vec<usize> = (0..SUBSAMPLE.min(len)).map(|_| rng.gen_range(0..len)).collect();
    indices.extend([0, len - 1]);
    indices.sort_unstable();
    indices.dedup();
    let exact_subsample_ok = indices.iter().all(|&i| {
        let lo = i.saturating_sub(n - 1);
        let best = (lo..=i.min(n - 1)).map(|j| exact(a[j]) + exact(b[i - j])).min().expect("nonempty fiber");
        best == exact(out[i])
    });

    Ok(BenchReport {
        n,
        mode,
        seed,
        kernel_seconds,
        naive_seconds,
        speedup: naive_seconds / kernel_seconds.max(1e-9),
        kernel_ops,
        naive_ops,
        matches_naive: out == naive,
        exact_indices_checked: indices.len(),
        exact_subsample_ok,
    })
}
