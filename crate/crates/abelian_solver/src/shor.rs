use group_core::{HspError, Result};
use num_integer::Integer;
use rand::Rng;

use crate::hperp::{cyclic_period, sample_cyclic};

pub fn mod_pow(b: u64, e: impl Into<u128>, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut e = e.into();
    let mut r = 1u128;
    let mut b128 = u128::from(b % m);
    let m128 = u128::from(m);
    while e > 0 {
        if e & 1 == 1 {
            r = r * b128 % m128;
        }
        b128 = b128 * b128 % m128;
        e >>= 1;
    }
    r as u64
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// `Some((p, k))` when `n = p^k` with `p` prime and `k >= 1`.
pub fn prime_power(n: u64) -> Option<(u64, u32)> {
    let p = (2..=n).find(|d| n % d == 0)?;
    let mut m = n;
    let mut k = 0;
    while m % p == 0 {
        m /= p;
        k += 1;
    }
    (m == 1).then_some((p, k))
}

/// Largest supported modulus: `lcm(1..=n0)` must fit in 128 bits.
pub const SHOR_MAX_N0: u64 = 88;

/// `lcm(1, ..., n)`, a multiple of every order modulo `n0 <= n`.
pub fn working_modulus(n0: u64) -> Result<u128> {
    if n0 > SHOR_MAX_N0 {
        return Err(HspError::Capacity { what: "shor modulus".into(), size: n0 as usize, cap: SHOR_MAX_N0 as usize });
    }
    Ok((1..=u128::from(n0)).fold(1, |a, b| a.lcm(&b)))
}

/// Samples per period attempt; the gcd is exact with probability at least `1 - 2^-10`.
pub const SHOR_SAMPLES: usize = 20;
pub const SHOR_ATTEMPTS: usize = 20;

/// Period of `x -> a^x mod n0` on `Z_Q` with `Q = rM`: each measurement is `lambda * M`, the
/// gcd of a batch recovers `M` and hence `r = Q / M`.
pub fn shor_period<R: Rng + ?Sized>(a: u64, n0: u64, rng: &mut R) -> Result<u64> {
    if n0 < 2 || a.gcd(&n0) != 1 {
        return Err(HspError::Precondition(format!("need gcd(a, n0) = 1, got a = {a}, n0 = {n0}")));
    }
    let q = working_modulus(n0)?;
    let f = |x: u128| mod_pow(a, x, n0);
    let period = cyclic_period(q, &f)?;
    for _ in 0..SHOR_ATTEMPTS {
        // every sample is a multiple of M and M divides Q, so the fold starts at Q
        let m = (0..SHOR_SAMPLES).fold(q, |acc, _| acc.gcd(&sample_cyclic(q, period, rng)));
        let r = (q / m) as u64;
        if mod_pow(a, r, n0) == 1 {
            return Ok(r);
        }
    }
    Err(HspError::Failure(format!("no period for a = {a} mod {n0}")))
}

/// Exact measurement distribution over `Z_Q`, `Q = 2^q` with `n0^2 <= Q < 2 n0^2`, when the
/// period does not divide `Q`.
pub fn shor_statevector_distribution(a: u64, n0: u64) -> Result<(u64, Vec<f64>)> {
    if n0 > 64 || n0 < 2 {
        return Err(HspError::Capacity { what: "state-vector shor".into(), size: n0 as usize, cap: 64 });
    }
    let q = (n0 * n0).next_power_of_two();
    let r = (1..=n0).find(|&k| mod_pow(a, k, n0) == 1).ok_or_else(|| HspError::Precondition("a is not a unit".into()))?;
    let qf = q as f64;
    let counts = [q / r, q / r + 1];
    let weight = [r - q % r, q % r];
    let mut probs = vec![0.0; q as usize];
    for (j, p) in probs.iter_mut().enumerate() {
        let phase = std::f64::consts::PI * (j as u64 * r % q) as f64 / qf;
        for (&m, &w) in counts.iter().zip(&weight) {
            if w == 0 {
                continue;
            }
            let s2 = if phase.sin().abs() < 1e-15 {
                (m * m) as f64
            } else {
                ((m as f64 * phase).sin() / phase.sin()).powi(2)
            };
            *p += w as f64 * s2 / (qf * qf);
        }
    }
    Ok((q, probs))
}

/// Convergent denominators of `j / q`.
pub fn convergent_denominators(j: u64, q: u64) -> Vec<u64> {
    let (mut num, mut den) = (j, q);
    let mut out = Vec::new();
    let (mut k0, mut k1) = (1u64, 0u64);
    while den != 0 {
        let a = num / den;
        let k2 = a * k1 + k0;
        (k0, k1) = (k1, k2);
        if k2 > 0 {
            out.push(k2);
        }
        (num, den) = (den, num - a * den);
    }
    out
}

/// Approximate-case period finding: sample the exact distribution, expand `j/Q` in
/// continued fractions, and accept the first denominator `k < n0` with `a^k = 1`.
pub fn shor_period_statevector<R: Rng + ?Sized>(a: u64, n0: u64, rng: &mut R) -> Result<(u64, usize)> {
    let (q, probs) = shor_statevector_distribution(a, n0)?;
    let cdf: Vec<f64> = probs
        .iter()
        .scan(0.0, |acc, p| {
            *acc += p;
            Some(*acc)
        })
        .collect();
    let total = *cdf.last().unwrap();
    for tries in 1..=100 {
        let u = rng.gen::<f64>() * total;
        let j = cdf.partition_point(|&c| c <= u).min(probs.len() - 1) as u64;
        for k in convergent_denominators(j, q) {
            if k < n0 {
                // small multiples cover a convergent that lands on a divisor of r
                for mult in 1..=3 {
                    if k * mult < n0 && mod_pow(a, k * mult, n0) == 1 {
                        return Ok((k * mult, tries));
                    }
                }
            }
        }
    }
    Err(HspError::Failure(format!("state-vector period search failed for a = {a} mod {n0}")))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShorReport {
    pub factor: u64,
    pub attempts: usize,
    pub base: u64,
    pub period: Option<u64>,
}

pub fn shor_factor<R: Rng + ?Sized>(n0: u64, rng: &mut R) -> Result<ShorReport> {
    if n0 < 4 || is_prime(n0) {
        return Err(HspError::Precondition(format!("{n0} is not composite")));
    }
    if n0 % 2 == 0 {
        return Ok(ShorReport { factor: 2, attempts: 0, base: 0, period: None });
    }
    if prime_power(n0).is_some() {
        return Err(HspError::Precondition(format!("{n0} is a prime power")));
    }
    for attempt in 1..=SHOR_ATTEMPTS {
        let a = rng.gen_range(2..n0 - 1);
        let g = a.gcd(&n0);
        if g > 1 {
            return Ok(ShorReport { factor: g, attempts: attempt, base: a, period: None });
        }
        let r = shor_period(a, n0, rng)?;
        if r % 2 == 1 {
            continue;
        }
        let y = mod_pow(a, r / 2, n0);
        if y == n0 - 1 {
            continue;
        }
        let f = (y + n0 - 1).gcd(&n0);
        if f > 1 && f < n0 {
            return Ok(ShorReport { factor: f, attempts: attempt, base: a, period: Some(r) });
        }
    }
    Err(HspError::Failure(format!("no factor of {n0} after {SHOR_ATTEMPTS} attempts")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{rngs::StdRng, SeedableRng};

    #[test]
    fn period_examples() {
        let mut rng = StdRng::seed_from_u64(3);
        assert_eq!(shor_period(7, 15, &mut rng).unwrap(), 4);
        assert_eq!(shor_period(1, 15, &mut rng).unwrap(), 1);
        assert!(shor_period(5, 15, &mut rng).is_err());
        let y = mod_pow(7, 2u64, 15);
        assert_eq!([(y + 14).gcd(&15), (y + 1).gcd(&15)], [3, 5]);
    }

    #[test]
    fn statevector_distribution_is_normalized() {
        for (a, n0) in [(7, 15), (2, 21), (5, 33)] {
            let (_, p) = shor_statevector_distribution(a, n0).unwrap();
            assert!((p.iter().sum::<f64>() - 1.0).abs() < 1e-9);
        }
        let mut rng = StdRng::seed_from_u64(9);
        assert_eq!(shor_period_statevector(2, 21, &mut rng).unwrap().0, 6);
    }

    #[test]
    fn convergents() {
        // 3/8 = [0; 2, 1, 2]
        assert_eq!(convergent_denominators(3, 8), vec![1, 2, 3, 8]);
    }
}
