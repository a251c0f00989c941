use group_core::{HspError, Result};
use rand::Rng;

/// `f(x) = min(x, x xor s)`: two-to-one with period `s`, or injective when `s = 0`.
pub fn simon_oracle(s: u64) -> impl Fn(u64) -> u64 + Send + Sync + Clone {
    move |x| x.min(x ^ s)
}

/// Uniform sampler over `{z : z.s = 0 mod 2}`, with `s` read off the oracle by brute force.
pub struct SimonDevice {
    n: u32,
    s: u64,
}

impl SimonDevice {
    pub fn new(n: u32, f: &dyn Fn(u64) -> u64) -> Result<Self> {
        if n == 0 || n > 20 {
            return Err(HspError::Domain(format!("simon needs 1 <= n <= 20, got {n}")));
        }
        let y0 = f(0);
        let partners: Vec<u64> = (1..1u64 << n).filter(|&x| f(x) == y0).collect();
        let s = match partners.as_slice() {
            [] => 0,
            [s] => *s,
            _ => return Err(HspError::Inconsistent("oracle is not at most two-to-one".into())),
        };
        Ok(SimonDevice { n, s })
    }

    pub fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        loop {
            let z = rng.gen_range(0..1u64 << self.n);
            if (z & self.s).count_ones() % 2 == 0 {
                return z;
            }
        }
    }
}

/// Row-reduced GF(2) basis with pivot bits.
#[derive(Debug, Default, Clone)]
struct Gf2Basis {
    rows: Vec<(u32, u64)>,
}

impl Gf2Basis {
    fn insert(&mut self, mut z: u64) -> bool {
        for &(p, r) in &self.rows {
            if z >> p & 1 == 1 {
                z ^= r;
            }
        }
        if z == 0 {
            return false;
        }
        let p = 63 - z.leading_zeros();
        for row in &mut self.rows {
            if row.1 >> p & 1 == 1 {
                row.1 ^= z;
            }
        }
        self.rows.push((p, z));
        true
    }

    /// A nonzero vector orthogonal to every row, when the rank is `n - 1`.
    fn null_vector(&self, n: u32) -> Option<u64> {
        let pivots: u64 = self.rows.iter().fold(0, |m, &(p, _)| m | 1 << p);
        let free = (0..n).find(|&b| pivots >> b & 1 == 0)?;
        let mut s = 1u64 << free;
        for &(p, r) in &self.rows {
            if r >> free & 1 == 1 {
                s |= 1 << p;
            }
        }
        Some(s)
    }
}

pub const SIMON_SAMPLE_CAP_FACTOR: usize = 8;

/// Collects samples until the linear system pins `s` down. Returns `s` together with the
/// number of oracle samples used.
pub fn simon_solve<R: Rng + ?Sized>(n: u32, f: &dyn Fn(u64) -> u64, rng: &mut R) -> Result<(u64, usize)> {
    let device = SimonDevice::new(n, f)?;
    let cap = SIMON_SAMPLE_CAP_FACTOR * n as usize + 20;
    let mut basis = Gf2Basis::default();
    let y0 = f(0);
    for used in 1..=cap {
        basis.insert(device.draw(rng));
        let rank = basis.rows.len() as u32;
        if rank == n {
            return Ok((0, used));
        }
        // n + 10 samples without full rank is strong evidence for a period; confirm with f.
        if rank == n - 1 && used >= n as usize + 10 {
            let s = basis.null_vector(n).expect("rank n-1 leaves one free bit");
            if f(s) == y0 {
                return Ok((s, used));
            }
        }
    }
    Err(HspError::Failure(format!("rank stayed below {n} after {cap} samples")))
}
