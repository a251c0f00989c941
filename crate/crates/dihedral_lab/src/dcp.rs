//! Dihedral coset states and the one-qubit phase states derived from them.

use group_core::{GroupSpec, HspError, Result};
use rand::Rng;
use rep_theory::{root_of_unity, C64};
use sampling::HidingOracle;

/// `f(a, b) = a - b d mod N`, which hides `<(d, 1)>` in `D_N`.
pub fn slope_oracle(n: usize, d: usize) -> HidingOracle {
    let d = d % n.max(1);
    HidingOracle::from_fn(GroupSpec::dihedral(n), move |e| ((e % n + n - (e / n) * d) % n) as u64)
}

/// The shift `d` with `f(d, 1) = f(0, 0)`, found by scanning; `None` when `H` has no
/// reflection.
pub fn hidden_slope(oracle: &HidingOracle) -> Option<usize> {
    let n = oracle.group().order() / 2;
    let y0 = oracle.eval(0);
    (0..n).find(|&a| oracle.eval(a + n) == y0)
}

/// `(1/sqrt2)(|x>|0> + |x+d>|1>)`, or the basis state `|a>|b>` after a corruption.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DcpState {
    n: usize,
    x: usize,
    shift: usize,
    corrupted: Option<(usize, u8)>,
}

impl DcpState {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn x(&self) -> usize {
        self.x
    }

    pub fn is_corrupted(&self) -> bool {
        self.corrupted.is_some()
    }

    /// Nonzero amplitudes over `Z_N x Z_2`.
    pub fn amplitudes(&self) -> Vec<((usize, u8), C64)> {
        match self.corrupted {
            Some(ab) => vec![(ab, C64::new(1.0, 0.0))],
            None => {
                let s = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
                vec![((self.x, 0), s), (((self.x + self.shift) % self.n, 1), s)]
            }
        }
    }
}

/// Black box emitting DCP states. With a failure parameter `p`, each state is replaced by a
/// uniformly random basis state of `D_N` with probability `1/(log2 N)^p`.
#[derive(Debug, Clone)]
pub struct DcpSource {
    n: usize,
    shift: usize,
    failure_p: Option<f64>,
    queries: u64,
}

impl DcpSource {
    pub fn new(n: usize, d: usize, failure_p: Option<f64>) -> Result<Self> {
        if n == 0 {
            return Err(HspError::Domain("N must be positive".into()));
        }
        if d >= n {
            return Err(HspError::Domain(format!("d = {d} outside Z_{n}")));
        }
        Ok(DcpSource { n, shift: d, failure_p, queries: 0 })
    }

    /// Source backed by an oracle hiding `<(d, 1)>`.
    pub fn from_oracle(oracle: &HidingOracle, failure_p: Option<f64>) -> Result<Self> {
        let d = hidden_slope(oracle)
            .ok_or_else(|| HspError::Precondition("oracle hides no reflection".into()))?;
        Self::new(oracle.group().order() / 2, d, failure_p)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn queries(&self) -> u64 {
        self.queries
    }

    pub fn corruption_probability(&self) -> f64 {
        match self.failure_p {
            None => 0.0,
            Some(p) => {
                let l = (self.n as f64).log2().max(1.0);
                l.powf(-p).min(1.0)
            }
        }
    }

    pub fn draw<R: Rng + ?Sized>(&mut self, rng: &mut R) -> DcpState {
        self.queries += 1;
        let x = rng.gen_range(0..self.n);
        let corrupted = if self.failure_p.is_some() && rng.gen::<f64>() < self.corruption_probability() {
            Some((rng.gen_range(0..self.n), rng.gen_range(0..2u8)))
        } else {
            None
        };
        DcpState { n: self.n, x, shift: self.shift, corrupted }
    }
}

pub fn dcp_blackbox<R: Rng + ?Sized>(n: usize, d: usize, failure_p: Option<f64>, rng: &mut R) -> Result<DcpState> {
    Ok(DcpSource::new(n, d, failure_p)?.draw(rng))
}

/// Actual qubit carried by a phase state: `(|0> + w^p |1>)/sqrt2`, or a basis state left
/// behind by a corrupted input.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Qubit {
    Phase(usize),
    Basis(u8),
}

/// `|Psi_k> = (1/sqrt2)(|0> + e^{2 pi i k d / N}|1>)`, known to the algorithm only by `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PhaseState {
    n: usize,
    k: usize,
    pub(crate) qubit: Qubit,
}

impl PhaseState {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn label(&self) -> usize {
        self.k
    }

    pub fn is_clean(&self) -> bool {
        matches!(self.qubit, Qubit::Phase(_))
    }

    pub fn amplitudes(&self) -> [C64; 2] {
        match self.qubit {
            Qubit::Phase(p) => {
                let s = std::f64::consts::FRAC_1_SQRT_2;
                [C64::new(s, 0.0), root_of_unity(self.n, p as i64) * s]
            }
            Qubit::Basis(b) => {
                let mut a = [C64::new(0.0, 0.0); 2];
                a[b as usize] = C64::new(1.0, 0.0);
                a
            }
        }
    }

    /// Probability of outcome `|->` in the Hadamard basis.
    pub fn minus_probability(&self) -> f64 {
        let [a, b] = self.amplitudes();
        (a - b).norm_sqr() / 2.0
    }

    pub fn measure_hadamard<R: Rng + ?Sized>(self, rng: &mut R) -> u8 {
        u8::from(rng.gen::<f64>() < self.minus_probability())
    }
}

/// `|Psi_k>` for slope `d`, as produced by an uncorrupted DCP state.
pub fn phase_state_for(n: usize, k: usize, d: usize) -> PhaseState {
    PhaseState { n, k: k % n, qubit: Qubit::Phase(k * d % n) }
}

/// Fourier transform of the first register followed by a measurement of `k`.
pub fn psi_from_dcp<R: Rng + ?Sized>(state: &DcpState, rng: &mut R) -> PhaseState {
    let n = state.n;
    let k = rng.gen_range(0..n);
    let qubit = match state.corrupted {
        Some((_, b)) => Qubit::Basis(b),
        None => Qubit::Phase(k * state.shift % n),
    };
    PhaseState { n, k, qubit }
}

/// CNOT from `a` onto `b`, then measure `b`: outcome 0 leaves `Psi_{k+l}`, outcome 1
/// leaves `Psi_{k-l}`.
pub fn combine<R: Rng + ?Sized>(a: PhaseState, b: PhaseState, rng: &mut R) -> Result<PhaseState> {
    if a.n != b.n {
        return Err(HspError::Domain(format!("cannot combine states over Z_{} and Z_{}", a.n, b.n)));
    }
    let n = a.n;
    let (m, qubit) = match (a.qubit, b.qubit) {
        (Qubit::Phase(p), Qubit::Phase(q)) => {
            let m = rng.gen_range(0..2u8);
            (m, Qubit::Phase(if m == 0 { (p + q) % n } else { (p + n - q) % n }))
        }
        (Qubit::Phase(_), Qubit::Basis(c)) => {
            let m = rng.gen_range(0..2u8);
            (m, Qubit::Basis(m ^ c))
        }
        (Qubit::Basis(x), Qubit::Phase(_)) => (rng.gen_range(0..2u8), Qubit::Basis(x)),
        (Qubit::Basis(x), Qubit::Basis(c)) => (x ^ c, Qubit::Basis(x)),
    };
    let k = if m == 0 { (a.k + b.k) % n } else { (a.k + n - b.k) % n };
    Ok(PhaseState { n, k, qubit })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{rngs::StdRng, SeedableRng};

    #[test]
    fn phase_state_examples() {
        let mut rng = StdRng::seed_from_u64(1);
        let mut src = DcpSource::new(8, 0, None).unwrap();
        for _ in 0..20 {
            let s = psi_from_dcp(&src.draw(&mut rng), &mut rng);
            assert!(s.minus_probability() < 1e-15);
        }
        let mut src = DcpSource::new(2, 1, None).unwrap();
        let s = loop {
            let s = psi_from_dcp(&src.draw(&mut rng), &mut rng);
            if s.label() == 1 {
                break s;
            }
        };
        assert!((s.minus_probability() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn combine_labels() {
        let mut rng = StdRng::seed_from_u64(2);
        let mk = |k: usize| PhaseState { n: 16, k, qubit: Qubit::Phase(k * 3 % 16) };
        for _ in 0..50 {
            let c = combine(mk(4), mk(12), &mut rng).unwrap();
            assert!(c.label() == 0 || c.label() == 8);
            assert_eq!(c.qubit, Qubit::Phase(c.label() * 3 % 16));
            assert_eq!(combine(mk(5), mk(0), &mut rng).unwrap().label(), 5);
        }
        let other = PhaseState { n: 8, k: 1, qubit: Qubit::Phase(1) };
        assert!(combine(mk(1), other, &mut rng).is_err());
    }
}
