//! Ettinger-Hoyer sampling and slope recovery.

use std::f64::consts::PI;

use group_core::{HspError, Result};
use rand::Rng;
use rep_theory::{root_of_unity, C64};
use sampling::{cumulative, sample_cdf, HidingOracle};

use crate::dcp::hidden_slope;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EhSample {
    pub k: usize,
    pub j: u8,
}

/// `P(k, 0) = cos^2(k pi d / N) / N` and `P(k, 1) = sin^2(k pi d / N) / N`, indexed `[k][j]`.
pub fn eh_probabilities(n: usize, d: usize) -> Vec<[f64; 2]> {
    (0..n)
        .map(|k| {
            let t = PI * ((k * d) % (2 * n)) as f64 / n as f64;
            let c = t.cos().powi(2);
            [c / n as f64, (1.0 - c) / n as f64]
        })
        .collect()
}

/// Same table from the circuit: coset state `(|x,0> + |x+d,1>)/sqrt2`, Fourier transform on
/// `Z_N`, Hadamard on the qubit, averaged over `x`.
pub fn eh_statevector(n: usize, d: usize) -> Vec<[f64; 2]> {
    let mut p = vec![[0.0; 2]; n];
    let s = 1.0 / (2.0 * n as f64).sqrt();
    for x in 0..n {
        let x1 = (x + d) % n;
        for (k, pk) in p.iter_mut().enumerate() {
            let a0 = root_of_unity(n, (k * x) as i64) * s;
            let a1 = root_of_unity(n, (k * x1) as i64) * s;
            let h = std::f64::consts::FRAC_1_SQRT_2;
            let out: [C64; 2] = [(a0 + a1) * h, (a0 - a1) * h];
            for j in 0..2 {
                pk[j] += out[j].norm_sqr() / n as f64;
            }
        }
    }
    p
}

fn flat_cdf(p: &[[f64; 2]]) -> Vec<f64> {
    cumulative(&p.iter().flat_map(|r| r.iter().copied()).collect::<Vec<_>>())
}

pub fn eh_sample<R: Rng + ?Sized>(n: usize, d: usize, rng: &mut R) -> Result<EhSample> {
    if n == 0 || d >= n {
        return Err(HspError::Domain(format!("d = {d} outside Z_{n}")));
    }
    let i = sample_cdf(&flat_cdf(&eh_probabilities(n, d)), rng);
    Ok(EhSample { k: i / 2, j: (i % 2) as u8 })
}

/// Measurement device wired to an oracle. It locates the coset structure by brute force and
/// then draws from the exact output distribution. With no reflection in `H` every `(k, j)` is
/// equally likely.
pub struct EhDevice {
    n: usize,
    cdf: Vec<f64>,
}

impl EhDevice {
    pub fn new(oracle: &HidingOracle) -> Result<Self> {
        let g = oracle.group();
        let n = g.order() / 2;
        if g.order() % 2 != 0 || n == 0 {
            return Err(HspError::Precondition(format!("{g} is not dihedral")));
        }
        let p = match hidden_slope(oracle) {
            Some(d) => eh_probabilities(n, d),
            None => vec![[0.5 / n as f64; 2]; n],
        };
        Ok(EhDevice { n, cdf: flat_cdf(&p) })
    }

    pub fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> EhSample {
        let i = sample_cdf(&self.cdf, rng);
        EhSample { k: i / 2, j: (i % 2) as u8 }
    }

    pub fn n(&self) -> usize {
        self.n
    }
}

pub const EH_MULTIPLIER: usize = 16;

pub fn eh_default_samples(n: usize) -> usize {
    EH_MULTIPLIER * abelian_solver::ceil_log2(n).max(1)
}

#[derive(Debug, Clone, PartialEq)]
pub struct EhReport {
    /// Verified slope, `None` when no candidate passes the oracle check.
    pub d: Option<usize>,
    /// Likelihood minimizer before the `d` vs `N - d` check.
    pub candidate: Option<usize>,
    pub tie: bool,
    pub samples: usize,
    pub oracle_calls: usize,
    pub verified: bool,
}

/// Negative log-likelihood of the samples under slope `c`; infinite when some sample is
/// impossible.
pub fn eh_nll(n: usize, c: usize, samples: &[EhSample]) -> f64 {
    let p = eh_probabilities(n, c);
    samples
        .iter()
        .map(|s| {
            let q = p[s.k][s.j as usize];
            if q <= 1e-15 {
                f64::INFINITY
            } else {
                -q.ln()
            }
        })
        .sum()
}

/// Checks `d = 0` and `d = N/2` directly, then minimizes the likelihood over `1..=N/2` and
/// settles `d` vs `N - d` with one more oracle call.
pub fn eh_solve<R: Rng + ?Sized>(oracle: &HidingOracle, m: Option<usize>, rng: &mut R) -> Result<EhReport> {
    let device = EhDevice::new(oracle)?;
    let n = device.n();
    let y0 = oracle.eval(0);
    let mut calls = 2;
    if oracle.eval(n) == y0 {
        return Ok(EhReport { d: Some(0), candidate: Some(0), tie: false, samples: 0, oracle_calls: calls, verified: true });
    }
    if n % 2 == 0 {
        calls += 1;
        if oracle.eval(n / 2 + n) == y0 {
            return Ok(EhReport {
                d: Some(n / 2),
                candidate: Some(n / 2),
                tie: false,
                samples: 0,
                oracle_calls: calls,
                verified: true,
            });
        }
    }
    let m = m.unwrap_or_else(|| eh_default_samples(n));
    let samples: Vec<EhSample> = (0..m).map(|_| device.draw(rng)).collect();
    let mut best: Option<(f64, usize)> = None;
    let mut tie = false;
    for c in 1..=n / 2 {
        let v = eh_nll(n, c, &samples);
        if !v.is_finite() {
            continue;
        }
        match best {
            Some((b, _)) if (v - b).abs() <= 1e-9 * b.abs().max(1.0) => tie = true,
            Some((b, _)) if v > b => {}
            _ => {
                best = Some((v, c));
                tie = false;
            }
        }
    }
    let Some((_, c)) = best else {
        return Ok(EhReport { d: None, candidate: None, tie: false, samples: m, oracle_calls: calls, verified: false });
    };
    calls += 1;
    let d = if oracle.eval(c + n) == y0 {
        Some(c)
    } else {
        calls += 1;
        (oracle.eval((n - c) % n + n) == y0).then_some((n - c) % n)
    };
    Ok(EhReport { d, candidate: Some(c), tie, samples: m, oracle_calls: calls, verified: d.is_some() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dcp::slope_oracle;
    use rand::{rngs::StdRng, SeedableRng};

    #[test]
    fn table_examples() {
        let p = eh_probabilities(4, 2);
        assert!(p[1][0].abs() < 1e-15 && (p[1][1] - 0.25).abs() < 1e-15);
        let q = eh_statevector(4, 2);
        assert!(q[1][0].abs() < 1e-12 && (q[1][1] - 0.25).abs() < 1e-12);
        assert!(eh_probabilities(8, 0).iter().all(|r| r[1] == 0.0));
    }

    #[test]
    fn solve_small() {
        let mut rng = StdRng::seed_from_u64(3);
        assert_eq!(eh_solve(&slope_oracle(16, 0), None, &mut rng).unwrap().d, Some(0));
        assert_eq!(eh_solve(&slope_oracle(16, 8), None, &mut rng).unwrap().d, Some(8));
        assert_eq!(eh_solve(&slope_oracle(16, 11), None, &mut rng).unwrap().d, Some(11));
    }
}
