//! Superposition experiments over value sets of the slope oracle, measured in the
//! symmetric/antisymmetric basis of `C^N (x) C^N`.

use std::f64::consts::PI;

use group_core::{HspError, Result};
use rand::Rng;
use rep_theory::{root_of_unity, C64};

/// `f(a, b) = a - b d mod N`, identifying coset values with `Z_N`.
fn f(n: usize, d: usize, a: i64, b: usize) -> usize {
    (a - (b * d) as i64).rem_euclid(n as i64) as usize
}

/// Outcome classes `[diagonal, symmetric, antisymmetric]` for the product `psi (x) phi`.
pub fn measure_classes(psi: &[C64], phi: &[C64]) -> [f64; 3] {
    let n = psi.len();
    let mut out = [0.0; 3];
    let sp: Vec<usize> = (0..n).filter(|&x| psi[x].norm_sqr() > 0.0 || phi[x].norm_sqr() > 0.0).collect();
    for (ix, &x) in sp.iter().enumerate() {
        out[0] += (psi[x] * phi[x]).norm_sqr();
        for &y in &sp[ix + 1..] {
            let (a, b) = (psi[x] * phi[y], psi[y] * phi[x]);
            out[1] += (a + b).norm_sqr() / 2.0;
            out[2] += (a - b).norm_sqr() / 2.0;
        }
    }
    out
}

fn draw_class<R: Rng + ?Sized>(p: &[f64; 3], rng: &mut R) -> usize {
    let u = rng.gen::<f64>() * (p[0] + p[1] + p[2]);
    if u < p[0] {
        0
    } else if u < p[0] + p[1] {
        1
    } else {
        2
    }
}

/// `|psi_{j1}>` over `f(2i, 0)` and `|phi_{j2}>` over `f(2i, 1)`, each with phases
/// `e^{2 pi i j i / N'}`.
pub fn parity_states(n: usize, d: usize, j1: usize, j2: usize) -> (Vec<C64>, Vec<C64>) {
    let half = n / 2;
    let s = 1.0 / (half as f64).sqrt();
    let mut psi = vec![C64::new(0.0, 0.0); n];
    let mut phi = vec![C64::new(0.0, 0.0); n];
    for i in 0..half {
        psi[f(n, d, 2 * i as i64, 0)] += root_of_unity(half, (j1 * i) as i64) * s;
        phi[f(n, d, 2 * i as i64, 1)] += root_of_unity(half, (j2 * i) as i64) * s;
    }
    (psi, phi)
}

/// Table values `[diagonal, symmetric, antisymmetric]` for the perturbed states.
pub fn perturbed_table(n: usize, d: usize, j1: usize, j2: usize) -> [f64; 3] {
    if d % 2 == 1 {
        return [0.0, 0.5, 0.5];
    }
    let half = n / 2;
    let h = half as f64;
    let (mut c, mut s) = (0.0, 0.0);
    let dj = (j2 as i64 - j1 as i64) as f64;
    for i2 in 0..half {
        for i1 in 0..i2 {
            let t = PI / h * dj * (i2 - i1) as f64;
            c += t.cos().powi(2);
            s += t.sin().powi(2);
        }
    }
    [1.0 / h, 2.0 * c / (h * h), 2.0 * s / (h * h)]
}

#[derive(Debug, Clone, PartialEq)]
pub struct ParityReport {
    pub n: usize,
    pub d: usize,
    /// `(d mod 2) / 2`.
    pub exact_antisymmetric: f64,
    /// Projection of the explicit product state onto the antisymmetric subspace.
    pub gram_antisymmetric: f64,
    pub empirical_antisymmetric: f64,
    pub trials: usize,
}

/// Ideal preparation of the uniform superpositions over `E_0^0` and `E_0^1`, measured
/// `trials` times.
pub fn parity_superposition_experiment<R: Rng + ?Sized>(bits: u32, d: usize, trials: usize, rng: &mut R) -> Result<ParityReport> {
    if !(2..=12).contains(&bits) {
        return Err(HspError::Domain(format!("n = {bits} must lie in 2..=12")));
    }
    let n = 1usize << bits;
    if d >= n {
        return Err(HspError::Domain(format!("d = {d} outside Z_{n}")));
    }
    let (psi, phi) = parity_states(n, d, 0, 0);
    let p = measure_classes(&psi, &phi);
    let hits = (0..trials).filter(|_| draw_class(&p, rng) == 2).count();
    Ok(ParityReport {
        n,
        d,
        exact_antisymmetric: (d % 2) as f64 / 2.0,
        gram_antisymmetric: p[2],
        empirical_antisymmetric: if trials == 0 { 0.0 } else { hits as f64 / trials as f64 },
        trials,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WindowDecision {
    Below,
    AtLeast,
    Undecided,
}

impl WindowDecision {
    pub fn as_str(&self) -> &'static str {
        match self {
            WindowDecision::Below => "l < N'/2",
            WindowDecision::AtLeast => "l >= N'/2",
            WindowDecision::Undecided => "undecided",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct WindowReport {
    pub n: usize,
    pub n_prime: usize,
    pub a: usize,
    pub d: usize,
    /// `|F_0^0 n F_a^1|` counted directly.
    pub l: usize,
    /// `|N' - |d - a||`.
    pub l_formula: usize,
    /// `(1 + (l/N')^2) / 2`.
    pub exact_p: f64,
    /// Symmetric-subspace weight of the explicit product state.
    pub gram_p: f64,
    pub empirical_p: f64,
    pub trials: usize,
    pub p: f64,
    /// `(log2 N)^{2p+1}` measurements behind the decision.
    pub hoeffding_m: usize,
    pub t: f64,
    pub l_estimate: f64,
    pub blind_low: f64,
    pub blind_high: f64,
    pub blind_width: f64,
    pub decision: WindowDecision,
}

pub const WINDOW_P: f64 = 2.0;

/// `(log2 N)^{2p+1}` and `t = (log2 N)^{-p}`.
pub fn hoeffding_parameters(n: usize, p: f64) -> (usize, f64) {
    let l = (n as f64).log2();
    (l.powf(2.0 * p + 1.0).ceil() as usize, l.powf(-p))
}

/// Uniform superpositions over `F_a^1` and `F_0^0` for `N = 4M`, the exact symmetric
/// probability, an empirical estimate, and the Hoeffding decision on `l` against `N'/2`.
pub fn window_overlap_experiment<R: Rng + ?Sized>(
    m: usize,
    d: usize,
    a: usize,
    trials: usize,
    p: Option<f64>,
    rng: &mut R,
) -> Result<WindowReport> {
    if m == 0 || m > 1024 {
        return Err(HspError::Domain(format!("M = {m} must lie in 1..=1024")));
    }
    let n = 4 * m;
    let half = 2 * m;
    if d >= n || a >= n {
        return Err(HspError::Domain(format!("d and a must lie in Z_{n}")));
    }
    let s = 1.0 / (half as f64).sqrt();
    let mut psi = vec![C64::new(0.0, 0.0); n];
    let mut phi = vec![C64::new(0.0, 0.0); n];
    for i in 0..half {
        psi[f(n, d, (a + i) as i64, 1)] += s;
        phi[f(n, d, i as i64, 0)] += s;
    }
    let l = (0..n).filter(|&x| psi[x].norm_sqr() > 0.0 && phi[x].norm_sqr() > 0.0).count();
    let l_formula = (half as i64 - (d as i64 - a as i64).abs()).unsigned_abs() as usize;
    let ratio = l as f64 / half as f64;
    let exact_p = 0.5 * (1.0 + ratio * ratio);
    let classes = measure_classes(&psi, &phi);
    let gram_p = classes[0] + classes[1];
    let sym = |rng: &mut R| draw_class(&classes, rng) < 2;
    let hits = (0..trials).filter(|_| sym(rng)).count();
    let p = p.unwrap_or(WINDOW_P);
    let (hm, t) = hoeffding_parameters(n, p);
    let est = (0..hm).filter(|_| sym(rng)).count() as f64 / hm as f64;
    let l_estimate = half as f64 * (2.0 * est - 1.0).max(0.0).sqrt();
    let blind_low = (1.0 - 4.0 * t).max(0.0).sqrt() * half as f64 / 2.0;
    let blind_high = (1.0 + 4.0 * t).sqrt() * half as f64 / 2.0;
    let decision = if l_estimate < blind_low {
        WindowDecision::Below
    } else if l_estimate > blind_high {
        WindowDecision::AtLeast
    } else {
        WindowDecision::Undecided
    };
    Ok(WindowReport {
        n,
        n_prime: half,
        a,
        d,
        l,
        l_formula,
        exact_p,
        gram_p,
        empirical_p: if trials == 0 { 0.0 } else { hits as f64 / trials as f64 },
        trials,
        p,
        hoeffding_m: hm,
        t,
        l_estimate,
        blind_low,
        blind_high,
        blind_width: blind_high - blind_low,
        decision,
    })
}
