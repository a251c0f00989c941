use group_core::{subgroup_closure, GroupSpec, HspError, Result, Subgroup};
use rand::Rng;
use sampling::HidingOracle;

use crate::hperp::{character_kernel, pairing, AbelianDecomposition, HperpSampler};

/// Extra samples beyond `log|G|`; failure probability is at most `2^-t`.
pub const EXTRA_SAMPLES: usize = 10;

/// Extra batches drawn when the first batch leaves a kernel larger than `H`.
pub const TOP_UP_ROUNDS: usize = 4;

/// Default number of samples, `t + ceil(log2 n)`.
pub fn default_trials(order: usize) -> usize {
    EXTRA_SAMPLES + ceil_log2(order)
}

pub fn ceil_log2(n: usize) -> usize {
    if n <= 1 {
        0
    } else {
        (usize::BITS - (n - 1).leading_zeros()) as usize
    }
}

/// Samples characters trivial on `H`, intersects their kernels through the SNF kernel of the
/// congruence system, and checks the result against the oracle.
pub fn solve_abelian<R: Rng + ?Sized>(
    g: &GroupSpec,
    dec: &AbelianDecomposition,
    oracle: &HidingOracle,
    trials: Option<usize>,
    rng: &mut R,
) -> Result<Subgroup> {
    let sampler = HperpSampler::new(g, dec, oracle)?;
    solve_with(g, dec, oracle, &sampler, trials.unwrap_or_else(|| default_trials(g.order())), rng)
}

pub fn solve_with<R: Rng + ?Sized>(
    g: &GroupSpec,
    dec: &AbelianDecomposition,
    oracle: &HidingOracle,
    sampler: &HperpSampler,
    trials: usize,
    rng: &mut R,
) -> Result<Subgroup> {
    let mut samples: Vec<Vec<usize>> = (0..trials).map(|_| sampler.draw(rng).coords).collect();
    let y0 = oracle.eval(0);
    // A kernel strictly larger than H means too few characters; top up and retry.
    for _ in 0..=TOP_UP_ROUNDS {
        let gens: Vec<usize> =
            character_kernel(&dec.orders, &samples).iter().map(|x| dec.embed(g, x)).collect();
        if gens.iter().all(|&x| oracle.eval(x) == y0) {
            return subgroup_closure(g, &gens);
        }
        if g.order() <= 4096 {
            let elems: Vec<usize> = dec
                .all_coords()
                .into_iter()
                .filter(|x| samples.iter().all(|s| pairing(&dec.orders, s, x) == 0))
                .map(|x| dec.embed(g, &x))
                .collect();
            if elems.iter().all(|&x| oracle.eval(x) == y0) {
                return Subgroup::from_elements(g, elems);
            }
        }
        samples.extend((0..trials.max(1)).map(|_| sampler.draw(rng).coords));
    }
    Err(HspError::Inconsistent("character kernel is not hidden by the oracle".into()))
}
