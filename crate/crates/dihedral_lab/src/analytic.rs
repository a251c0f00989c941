//! Closed-form Fourier-sampling distributions over `D_N` and the equivalences between strong
//! sampling, Ettinger-Hoyer sampling and DCP states.

use abelian_solver::{solve_abelian, AbelianDecomposition};
use group_core::{DihedralSubgroup, GroupSpec, HspError, Result};
use rand::Rng;
use rep_theory::{num_tau, tau_index, DihedralBasis, C64};
use sampling::{Distribution, FsObservation, HidingOracle, StrongLabel};

use crate::dcp::{psi_from_dcp, DcpState, PhaseState};
use crate::eh::{eh_probabilities, eh_solve, EhReport, EhSample};

pub const PSI0: usize = 0;
pub const PSI1: usize = 1;
pub const PSI2: usize = 2;
pub const PSI3: usize = 3;

#[derive(Debug, Clone, PartialEq)]
pub struct AnalyticFs {
    pub weak: Distribution<usize>,
    pub strong: Distribution<StrongLabel>,
}

/// `S_r = {k : 0 < k < N/2, (N/r) | k}`.
pub fn s_r(n: usize, r: usize) -> Vec<usize> {
    let step = n / r;
    (1..)
        .map(|i| i * step)
        .take_while(|&k| 2 * k < n)
        .collect()
}

/// Weak and strong distributions of `H_r` or `H_{r,d}` in the basis given by `(lambda, mu)`.
pub fn dihedral_analytic(n: usize, h: &DihedralSubgroup, basis: &DihedralBasis) -> Result<AnalyticFs> {
    let r = h.r;
    if h.n != n || r == 0 || n % r != 0 || h.d.is_some_and(|d| d >= r) {
        return Err(HspError::Domain(format!("{} is not a subgroup of D_{n}", h.label())));
    }
    if basis.n != n {
        return Err(HspError::Domain("basis built for another N".into()));
    }
    let rf = r as f64;
    let mut strong = Distribution::new();
    let mut one = |rho: usize, p: f64| strong.add((rho, 0), p);
    let even_r = r % 2 == 0;
    match h.d {
        None => {
            one(PSI0, 0.5 / rf);
            one(PSI1, 0.5 / rf);
            if n % 2 == 0 {
                let p = if even_r { 0.5 / rf } else { 0.0 };
                one(PSI2, p);
                one(PSI3, p);
            }
        }
        Some(d) => {
            one(PSI0, 1.0 / rf);
            one(PSI1, 0.0);
            if n % 2 == 0 {
                one(PSI2, if even_r && d % 2 == 0 { 1.0 / rf } else { 0.0 });
                one(PSI3, if even_r && d % 2 == 1 { 1.0 / rf } else { 0.0 });
            }
        }
    }
    let support = s_r(n, r);
    for k in 1..=num_tau(n) {
        let idx = tau_index(n, k);
        let on = support.contains(&k);
        for j in 0..2 {
            let p = match (on, h.d) {
                (false, _) => 0.0,
                (true, None) => 1.0 / rf,
                (true, Some(d)) => {
                    let phase = 2.0 * std::f64::consts::PI * ((k * d) % n) as f64 / n as f64 + basis.mu[k - 1];
                    let sign = if j == 0 { -1.0 } else { 1.0 };
                    (1.0 + sign * basis.lambda[k - 1] * phase.cos()) / rf
                }
            };
            strong.add((idx, j), p);
        }
    }
    let weak = strong.map(|l| l.0);
    Ok(AnalyticFs { weak, strong })
}

/// Label of a `D_r` irrep seen inside `D_N`: one-dimensional labels are kept and `tau^i`
/// becomes `tau^{i N / r}`.
pub fn quotient_label(n: usize, r: usize, rho: usize) -> usize {
    let ones_r = if r % 2 == 0 { 4 } else { 2 };
    if rho < ones_r {
        rho
    } else {
        tau_index(n, (rho - ones_r + 1) * (n / r))
    }
}

/// Parameters of `tau^{i N / r}` reused for `tau^i` over `D_r`.
pub fn restrict_basis(basis: &DihedralBasis, r: usize) -> Result<DihedralBasis> {
    let step = basis.n / r;
    let m = num_tau(r);
    DihedralBasis::new(
        r,
        (1..=m).map(|i| basis.lambda[i * step - 1]).collect(),
        (1..=m).map(|i| basis.mu[i * step - 1]).collect(),
    )
}

/// Maps a strong observation taken in the Hadamard basis (`lambda = 1, mu = -pi`) to an
/// Ettinger-Hoyer sample. `psi2` and `psi3` carry the parity of `d`, so they go to `(N/2, 0)`
/// and `(N/2, 1)` respectively.
pub fn strong_to_eh<R: Rng + ?Sized>(n: usize, obs: &FsObservation, rng: &mut R) -> Result<EhSample> {
    let j = obs.j.unwrap_or(0) as u8;
    let ones = if n % 2 == 0 { 4 } else { 2 };
    Ok(match obs.rho {
        PSI0 | PSI1 => EhSample { k: 0, j: obs.rho as u8 },
        PSI2 | PSI3 if n % 2 == 0 => EhSample { k: n / 2, j: (obs.rho - PSI2) as u8 },
        rho if rho < ones + num_tau(n) => {
            let k = rho - ones + 1;
            EhSample { k: if rng.gen::<bool>() { k } else { n - k }, j }
        }
        rho => return Err(HspError::Domain(format!("irrep index {rho} out of range for D_{n}"))),
    })
}

/// Exact image of a strong distribution under `strong_to_eh`, indexed `[k][j]`.
pub fn strong_to_eh_distribution(n: usize, strong: &Distribution<StrongLabel>) -> Vec<[f64; 2]> {
    let mut out = vec![[0.0; 2]; n];
    let ones = if n % 2 == 0 { 4 } else { 2 };
    for (&(rho, j), &p) in &strong.outcomes {
        match rho {
            PSI0 | PSI1 => out[0][rho] += p,
            PSI2 | PSI3 if n % 2 == 0 => out[n / 2][rho - PSI2] += p,
            _ => {
                let k = rho - ones + 1;
                out[k][j] += p / 2.0;
                out[n - k][j] += p / 2.0;
            }
        }
    }
    out
}

/// `P(j = 0) = |(U_k q)_0|^2`, i.e. measuring in the columns of `U_k^dagger`.
fn column_zero_probability(q: [C64; 2], basis: &DihedralBasis, k: usize) -> f64 {
    let u = basis.u(k);
    (u[(0, 0)] * q[0] + u[(0, 1)] * q[1]).norm_sqr()
}

/// Outcome distribution of the DCP-based strong sampler for a phase state, as
/// `(irrep, column, probability)` triples.
fn phase_outcomes(state: &PhaseState, basis: &DihedralBasis) -> Vec<(usize, usize, f64)> {
    let n = state.n();
    let k = state.label();
    let q = state.amplitudes();
    if k == 0 {
        return vec![(PSI0, 0, 1.0)];
    }
    if 2 * k == n {
        let p_minus = state.minus_probability().clamp(0.0, 1.0);
        return vec![(PSI2, 0, 1.0 - p_minus), (PSI3, 0, p_minus)];
    }
    // labels above N/2 get an X first, which turns Psi_{N-k} into Psi_k up to phase
    let (kk, q) = if 2 * k < n { (k, q) } else { (n - k, [q[1], q[0]]) };
    let p0 = column_zero_probability(q, basis, kk).clamp(0.0, 1.0);
    let idx = tau_index(n, kk);
    vec![(idx, 0, p0), (idx, 1, 1.0 - p0)]
}

/// Simulates one strong Fourier sample in `basis` from one DCP state.
pub fn dcp_to_strong<R: Rng + ?Sized>(state: &DcpState, basis: &DihedralBasis, rng: &mut R) -> Result<FsObservation> {
    if basis.n != state.n() {
        return Err(HspError::Domain("basis built for another N".into()));
    }
    let psi = psi_from_dcp(state, rng);
    let outcomes = phase_outcomes(&psi, basis);
    let mut u = rng.gen::<f64>();
    let mut pick = outcomes[outcomes.len() - 1];
    for o in &outcomes {
        if u < o.2 {
            pick = *o;
            break;
        }
        u -= o.2;
    }
    Ok(FsObservation { rho: pick.0, i: None, j: Some(pick.1), value: None })
}

/// Exact output distribution of `dcp_to_strong` for slope `d`.
pub fn dcp_strong_distribution(n: usize, d: usize, basis: &DihedralBasis) -> Distribution<StrongLabel> {
    let mut out = Distribution::new();
    for k in 0..n {
        let psi = crate::dcp::phase_state_for(n, k, d);
        for (rho, j, p) in phase_outcomes(&psi, basis) {
            out.add((rho, j), p / n as f64);
        }
    }
    out
}

/// `P(k, j)` of the Ettinger-Hoyer measurement as a distribution, for comparisons.
pub fn eh_distribution(n: usize, d: usize) -> Distribution<EhSample> {
    let mut out = Distribution::new();
    for (k, row) in eh_probabilities(n, d).iter().enumerate() {
        for j in 0..2 {
            out.add(EhSample { k, j: j as u8 }, row[j]);
        }
    }
    out
}

#[derive(Clone)]
pub struct Reduction {
    pub r: usize,
    /// `f_quot(i, b) = f(i, b)` for `i < r`, an oracle over `D_r`.
    pub reduced: HidingOracle,
}

/// Finds `r` with cyclic HSP on `a -> f(a, 0)` and restricts the oracle to `D_r`.
pub fn dihedral_reduce<R: Rng + ?Sized>(oracle: &HidingOracle, rng: &mut R) -> Result<Reduction> {
    let n = oracle.group().order() / 2;
    if n == 0 || oracle.group().order() != 2 * n {
        return Err(HspError::Precondition(format!("{} is not dihedral", oracle.group())));
    }
    let zn = GroupSpec::cyclic(n);
    let inner = oracle.clone();
    let rot = HidingOracle::from_fn(zn.clone(), move |a| inner.eval(a));
    let dec = AbelianDecomposition::standard(&zn)?;
    let hr = solve_abelian(&zn, &dec, &rot, None, rng)?;
    let r = n / hr.order();
    let inner = oracle.clone();
    let reduced = HidingOracle::from_fn(GroupSpec::dihedral(r), move |e| inner.eval(e % r + n * (e / r)));
    Ok(Reduction { r, reduced })
}

#[derive(Debug, Clone, PartialEq)]
pub struct DihedralVerdict {
    pub subgroup: DihedralSubgroup,
    pub eh: EhReport,
}

/// Reduction to `D_r`, Ettinger-Hoyer on the quotient, and the final check `f(d, 1) = f(0, 0)`.
pub fn solve_dihedral<R: Rng + ?Sized>(oracle: &HidingOracle, m: Option<usize>, rng: &mut R) -> Result<DihedralVerdict> {
    let n = oracle.group().order() / 2;
    let red = dihedral_reduce(oracle, rng)?;
    let eh = eh_solve(&red.reduced, m, rng)?;
    let subgroup = match eh.d {
        Some(d) if oracle.eval(d + n) == oracle.eval(0) => DihedralSubgroup::reflections(n, red.r, d),
        _ => DihedralSubgroup::rotations(n, red.r),
    };
    Ok(DihedralVerdict { subgroup, eh })
}
