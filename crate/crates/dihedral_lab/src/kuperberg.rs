//! Kuperberg's sieve over `D_{2^n}`: build `Psi_{N/2}` to read the parity of `d`, then
//! descend into `D_{N/2}`.

use std::collections::HashMap;

use group_core::{GroupSpec, HspError, Result};
use rand::Rng;
use sampling::HidingOracle;

use crate::dcp::{combine, psi_from_dcp, DcpSource, PhaseState};

#[derive(Debug, Clone, PartialEq)]
pub struct KuperbergConfig {
    /// Cap on DCP draws plus classical oracle calls.
    pub budget: u64,
    /// Fresh states per batch are `batch_mult * 2^{2 sqrt m}`.
    pub batch_mult: f64,
    /// Number of `Psi_{N/2}` states measured per bit.
    pub votes: usize,
    pub failure_p: Option<f64>,
}

impl Default for KuperbergConfig {
    fn default() -> Self {
        KuperbergConfig { budget: 1_000_000, batch_mult: 4.0, votes: 8, failure_p: None }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LevelStats {
    /// `log2` of the modulus at this level.
    pub bits: usize,
    pub stage_width: usize,
    pub queries: u64,
    pub combines: u64,
    pub discarded: u64,
    pub finals: usize,
    pub votes_for_one: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KuperbergReport {
    /// Full slope when every bit was recovered.
    pub d: Option<usize>,
    /// Recovered bits, least significant first.
    pub bits: Vec<u8>,
    pub queries: u64,
    pub levels: Vec<LevelStats>,
}

pub fn stage_width(m: usize) -> usize {
    ((m.saturating_sub(1)) as f64).sqrt().ceil().max(1.0) as usize
}

pub fn batch_size(m: usize, mult: f64) -> usize {
    (mult * 2f64.powf(2.0 * (m as f64).sqrt())).ceil() as usize
}

/// Pools keyed by stage; stage `t` holds labels whose low `t * s` bits vanish, bucketed by the
/// next `s` bits. Two states sharing a bucket are combined at once.
struct Sieve {
    m: usize,
    s: usize,
    pools: Vec<HashMap<usize, PhaseState>>,
    finals: Vec<PhaseState>,
    combines: u64,
    discarded: u64,
}

impl Sieve {
    fn new(m: usize) -> Self {
        let s = stage_width(m);
        let stages = (m - 1).div_ceil(s);
        Sieve { m, s, pools: vec![HashMap::new(); stages], finals: Vec::new(), combines: 0, discarded: 0 }
    }

    fn insert<R: Rng + ?Sized>(&mut self, st: PhaseState, rng: &mut R) -> Result<()> {
        let mut st = st;
        loop {
            let k = st.label();
            if k == 0 {
                self.discarded += 1;
                return Ok(());
            }
            let tz = k.trailing_zeros() as usize;
            if tz >= self.m - 1 {
                self.finals.push(st);
                return Ok(());
            }
            let t = tz / self.s;
            let lo = t * self.s;
            let width = self.s.min(self.m - 1 - lo);
            let key = (k >> lo) & ((1 << width) - 1);
            match self.pools[t].remove(&key) {
                None => {
                    self.pools[t].insert(key, st);
                    return Ok(());
                }
                Some(other) => {
                    self.combines += 1;
                    st = combine(other, st, rng)?;
                }
            }
        }
    }
}

/// Sub-oracle over `D_{N/2}` for the coset picked by the parity bit: `(a', b') -> (2a' + bit b', b')`.
pub fn descend_oracle(oracle: &HidingOracle, bit: u8) -> HidingOracle {
    let n = oracle.group().order() / 2;
    let half = n / 2;
    let inner = oracle.clone();
    HidingOracle::from_fn(GroupSpec::dihedral(half), move |e| {
        let (a, b) = (e % half, e / half);
        inner.eval((2 * a + bit as usize * b) % n + n * b)
    })
}

/// Parity of the slope from majority-voted Hadamard measurements of `Psi_{N/2}`.
fn level<R: Rng + ?Sized>(
    oracle: &HidingOracle,
    m: usize,
    cfg: &KuperbergConfig,
    spent: u64,
    rng: &mut R,
) -> Result<(Option<u8>, LevelStats)> {
    let mut stats = LevelStats { bits: m, stage_width: stage_width(m), ..Default::default() };
    if m == 1 {
        if spent + 2 > cfg.budget {
            return Ok((None, stats));
        }
        stats.queries = 2;
        let bit = u8::from(oracle.eval(3) == oracle.eval(0));
        stats.votes_for_one = bit as usize;
        return Ok((Some(bit), stats));
    }
    let mut src = DcpSource::from_oracle(oracle, cfg.failure_p)?;
    let mut sieve = Sieve::new(m);
    let batch = batch_size(m, cfg.batch_mult);
    while sieve.finals.len() < cfg.votes {
        for _ in 0..batch {
            if spent + src.queries() >= cfg.budget {
                stats.queries = src.queries();
                stats.combines = sieve.combines;
                stats.discarded = sieve.discarded;
                stats.finals = sieve.finals.len();
                return Ok((None, stats));
            }
            let st = psi_from_dcp(&src.draw(rng), rng);
            sieve.insert(st, rng)?;
        }
    }
    let ones = sieve.finals.iter().map(|s| s.measure_hadamard(rng) as usize).sum::<usize>();
    stats.queries = src.queries();
    stats.combines = sieve.combines;
    stats.discarded = sieve.discarded;
    stats.finals = sieve.finals.len();
    stats.votes_for_one = ones;
    Ok((Some(u8::from(2 * ones > sieve.finals.len())), stats))
}

/// Recovers `d` for an oracle over `D_{2^n}` hiding `<(d, 1)>`.
pub fn kuperberg<R: Rng + ?Sized>(oracle: &HidingOracle, cfg: &KuperbergConfig, rng: &mut R) -> Result<KuperbergReport> {
    let n = oracle.group().order() / 2;
    if n < 2 || !n.is_power_of_two() || oracle.group().order() != 2 * n {
        return Err(HspError::Domain(format!("N = {n} must be a power of two, at least 2")));
    }
    let mut m = n.trailing_zeros() as usize;
    let mut current = oracle.clone();
    let mut bits = Vec::new();
    let mut levels = Vec::new();
    let mut queries = 0;
    while m >= 1 {
        let (bit, stats) = level(&current, m, cfg, queries, rng)?;
        queries += stats.queries;
        levels.push(stats);
        let Some(bit) = bit else {
            return Ok(KuperbergReport { d: None, bits, queries, levels });
        };
        bits.push(bit);
        if m > 1 {
            current = descend_oracle(&current, bit);
        }
        m -= 1;
    }
    let d = bits.iter().rev().fold(0usize, |acc, &b| 2 * acc + b as usize);
    Ok(KuperbergReport { d: Some(d), bits, queries, levels })
}
