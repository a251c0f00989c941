//! State-vector simulation of the standard method followed by the group QFT.

use std::collections::BTreeMap;

use fourier::{apply_qft, QftMatrix, StateVector};
use group_core::{Elem, GroupSpec, Result, Subgroup};
use rand::Rng;
use rep_theory::{BasisLabel, C64};

use crate::dist::{cumulative, sample_cdf, Distribution};
use crate::fs::JointLabel;
use crate::oracle::HidingOracle;

/// `(1/sqrt|H|) sum_h |g0 h>`.
pub fn coset_state(g: &GroupSpec, h: &Subgroup, g0: Elem) -> StateVector {
    let mut a = vec![C64::new(0.0, 0.0); g.order()];
    let amp = C64::new(1.0 / (h.order() as f64).sqrt(), 0.0);
    for &e in h.elements() {
        a[g.mul(g0, e)] = amp;
    }
    StateVector::new(a)
}

fn state_on(dim: usize, support: &[Elem]) -> StateVector {
    let mut a = vec![C64::new(0.0, 0.0); dim];
    let amp = C64::new(1.0 / (support.len() as f64).sqrt(), 0.0);
    for &x in support {
        a[x] = amp;
    }
    StateVector::new(a)
}

/// Picks `g0` uniformly, measures `f`, and returns the collapsed coset state with `f(g0)`.
pub fn sample_coset<R: Rng + ?Sized>(oracle: &HidingOracle, rng: &mut R) -> (StateVector, u64) {
    let g = oracle.group();
    let g0 = rng.gen_range(0..g.order());
    let y = oracle.eval(g0);
    let support = match oracle.hidden() {
        Some(h) => {
            let mut s: Vec<Elem> = h.elements().iter().map(|&e| g.mul(g0, e)).collect();
            s.sort_unstable();
            s
        }
        None => oracle.coset_of(g0),
    };
    (state_on(g.order(), &support), y)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FsMode {
    Weak,
    Strong,
    Joint,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FsObservation {
    pub rho: usize,
    pub i: Option<usize>,
    pub j: Option<usize>,
    pub value: Option<u64>,
}

/// Caches, per coset, the output distribution of `F_G` applied to the coset state, so
/// that repeated draws cost a binary search.
pub struct FourierSampler {
    labels: Vec<BasisLabel>,
    /// `(oracle value, coset size, cdf over flat labels)`
    cosets: Vec<(u64, usize, Vec<f64>)>,
    coset_cdf: Vec<f64>,
}

impl FourierSampler {
    pub fn new(qft: &QftMatrix, oracle: &HidingOracle) -> Result<Self> {
        let g = &qft.group;
        let mut by_value: BTreeMap<u64, Vec<Elem>> = BTreeMap::new();
        for x in g.elements_iter() {
            by_value.entry(oracle.eval(x)).or_default().push(x);
        }
        let mut cosets = Vec::new();
        let mut weights = Vec::new();
        for (y, support) in by_value {
            let out = apply_qft(qft, &state_on(g.order(), &support))?;
            weights.push(support.len() as f64);
            cosets.push((y, support.len(), cumulative(&out.probabilities())));
        }
        Ok(FourierSampler { labels: qft.table.basis_labels(), cosets, coset_cdf: cumulative(&weights) })
    }

    pub fn draw<R: Rng + ?Sized>(&self, mode: FsMode, rng: &mut R) -> FsObservation {
        let c = sample_cdf(&self.coset_cdf, rng);
        let (y, _, cdf) = &self.cosets[c];
        let l = self.labels[sample_cdf(cdf, rng)];
        match mode {
            FsMode::Weak => FsObservation { rho: l.rho, i: None, j: None, value: None },
            FsMode::Strong => FsObservation { rho: l.rho, i: None, j: Some(l.j), value: None },
            FsMode::Joint => FsObservation { rho: l.rho, i: Some(l.i), j: Some(l.j), value: Some(*y) },
        }
    }
}

/// One run of the circuit: random coset, QFT, measurement in the `(rho, i, j)` basis.
pub fn sample_fourier<R: Rng + ?Sized>(
    qft: &QftMatrix,
    oracle: &HidingOracle,
    mode: FsMode,
    rng: &mut R,
) -> Result<FsObservation> {
    let (state, y) = sample_coset(oracle, rng);
    let out = apply_qft(qft, &state)?;
    let labels = qft.table.basis_labels();
    let l = labels[sample_cdf(&cumulative(&out.probabilities()), rng)];
    Ok(match mode {
        FsMode::Weak => FsObservation { rho: l.rho, i: None, j: None, value: None },
        FsMode::Strong => FsObservation { rho: l.rho, i: None, j: Some(l.j), value: None },
        FsMode::Joint => FsObservation { rho: l.rho, i: Some(l.i), j: Some(l.j), value: Some(y) },
    })
}

/// Exact `P(rho, i, j, k)` by averaging `|F_G |g0 H>|^2` over every `g0`, with `k` the
/// canonical label of `g0 H`.
pub fn brute_force_joint(qft: &QftMatrix, oracle: &HidingOracle) -> Result<Distribution<JointLabel>> {
    let g = &qft.group;
    let labels = qft.table.basis_labels();
    let mut by_value: BTreeMap<u64, Vec<Elem>> = BTreeMap::new();
    for x in g.elements_iter() {
        by_value.entry(oracle.eval(x)).or_default().push(x);
    }
    let mut d = Distribution::new();
    for (y, support) in by_value {
        let w = support.len() as f64 / g.order() as f64;
        let out = apply_qft(qft, &state_on(g.order(), &support))?;
        for (l, p) in labels.iter().zip(out.probabilities()) {
            d.add((l.rho, l.i, l.j, y), w * p);
        }
    }
    Ok(d)
}

/// Exact `P(rho, i, j)` from the full simulation.
pub fn brute_force_rows(qft: &QftMatrix, oracle: &HidingOracle) -> Result<Distribution<(usize, usize, usize)>> {
    Ok(brute_force_joint(qft, oracle)?.map(|l| (l.0, l.1, l.2)))
}
