use fourier::QftMatrix;
use group_core::{HspError, Result, Subgroup};
use rand::Rng;
use rep_theory::rep_kernel;

use crate::oracle::HidingOracle;
use crate::sim::{FourierSampler, FsMode};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SizeVerdict {
    /// Two distinct oracle values were seen, so `H != G` for certain.
    Proper,
    /// All `k` values agreed; `H = G` with the given confidence `1 - 2^-k`.
    Whole { confidence: f64 },
}

/// Evaluates the oracle at `k` uniform points and looks for two distinct values.
pub fn size_probe<R: Rng + ?Sized>(oracle: &HidingOracle, k: usize, rng: &mut R) -> Result<SizeVerdict> {
    if k == 0 {
        return Err(HspError::Precondition("size probe needs k >= 1".into()));
    }
    let n = oracle.group().order();
    let first = oracle.eval(rng.gen_range(0..n));
    for _ in 1..k {
        if oracle.eval(rng.gen_range(0..n)) != first {
            return Ok(SizeVerdict::Proper);
        }
    }
    Ok(SizeVerdict::Whole { confidence: 1.0 - 0.5f64.powi(k as i32) })
}

/// Fewest weak samples ever drawn; `c log|G|` alone is too small for groups of order <= 4.
pub const MIN_NORMAL_SAMPLES: usize = 10;

/// Number of weak samples `max(ceil(c log2 |G|), MIN_NORMAL_SAMPLES)`.
pub fn normal_sample_count(order: usize, c: f64) -> usize {
    ((c * (order as f64).log2()).ceil() as usize).max(MIN_NORMAL_SAMPLES)
}

/// Intersects the kernels of [`normal_sample_count`] weakly sampled irreps.
///
/// For a normal hidden subgroup this recovers it with high probability. Otherwise the
/// result is the largest normal subgroup contained in it, at best.
pub fn solve_normal_hsp<R: Rng + ?Sized>(
    qft: &QftMatrix,
    oracle: &HidingOracle,
    c: f64,
    rng: &mut R,
) -> Result<Subgroup> {
    let sampler = FourierSampler::new(qft, oracle)?;
    solve_normal_with(&sampler, qft, c, rng)
}

/// Same as [`solve_normal_hsp`] with a prebuilt sampler, for repeated trials.
pub fn solve_normal_with<R: Rng + ?Sized>(
    sampler: &FourierSampler,
    qft: &QftMatrix,
    c: f64,
    rng: &mut R,
) -> Result<Subgroup> {
    let g = &qft.group;
    let s = normal_sample_count(g.order(), c);
    let mut seen = vec![false; qft.table.irreps.len()];
    for _ in 0..s {
        seen[sampler.draw(FsMode::Weak, rng).rho] = true;
    }
    let mut acc = Subgroup::whole(g)?;
    for (r, _) in seen.iter().enumerate().filter(|(_, &s)| s) {
        acc = acc.intersect(&rep_kernel(g, &qft.table.irreps[r])?);
    }
    acc.verify()?;
    Ok(acc)
}
