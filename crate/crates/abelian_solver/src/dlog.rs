use group_core::{GroupSpec, HspError, Result};
use num_integer::Integer;
use rand::Rng;
use sampling::HidingOracle;

use crate::hperp::{AbelianDecomposition, HperpSampler};
use crate::shor::{is_prime, mod_pow};

pub const DLOG_MAX_P: u64 = 1000;
pub const DLOG_RETRY_CAP: usize = 100;

fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    let e = (a as i64).extended_gcd(&(m as i64));
    (e.gcd == 1).then(|| e.x.rem_euclid(m as i64) as u64)
}

pub fn is_generator(p: u64, g: u64) -> bool {
    let n = p - 1;
    g % p != 0 && (2..=n).filter(|q| n % q == 0 && is_prime(*q)).all(|q| mod_pow(g, n / q, p) != 1)
}

/// `f(a, b) = g^a x^-b` on `Z_{p-1}^2`, hiding `<(y, 1)>`.
pub fn dlog_oracle(p: u64, g: u64, x: u64) -> Result<HidingOracle> {
    let group = GroupSpec::abelian(&[(p - 1) as usize, (p - 1) as usize]);
    let xinv = mod_inverse(x, p).ok_or_else(|| HspError::Domain(format!("{x} is not a unit mod {p}")))?;
    let n = p - 1;
    Ok(HidingOracle::from_fn(group, move |e| {
        let (a, b) = (e as u64 % n, e as u64 / n);
        mod_pow(g, a, p) * mod_pow(xinv, b, p) % p
    }))
}

/// Result of a discrete-log run: the exponent and how many measurements were drawn.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DlogReport {
    pub y: u64,
    pub samples: usize,
}

/// Draws `(u, -yu)` from `H^perp` until `u` is a unit mod `p - 1`, then `y = -v u^-1`.
pub fn discrete_log<R: Rng + ?Sized>(p: u64, g: u64, x: u64, rng: &mut R) -> Result<DlogReport> {
    if !is_prime(p) || p > DLOG_MAX_P {
        return Err(HspError::Domain(format!("p = {p} must be a prime at most {DLOG_MAX_P}")));
    }
    if !is_generator(p, g) {
        return Err(HspError::Precondition(format!("{g} does not generate Z_{p}^*")));
    }
    if x % p == 0 {
        return Err(HspError::Domain("x must be a unit".into()));
    }
    if p == 2 {
        return Ok(DlogReport { y: 0, samples: 0 });
    }
    let oracle = dlog_oracle(p, g, x % p)?;
    let dec = AbelianDecomposition::standard(oracle.group())?;
    let sampler = HperpSampler::new(oracle.group(), &dec, &oracle)?;
    let n = p - 1;
    for used in 1..=DLOG_RETRY_CAP {
        let c = sampler.draw(rng).coords;
        let (u, v) = (c[0] as u64, c[1] as u64);
        if let Some(ui) = mod_inverse(u, n) {
            let y = (n - v % n) % n * ui % n;
            if mod_pow(g, y, p) == x % p {
                return Ok(DlogReport { y, samples: used });
            }
            return Err(HspError::Inconsistent(format!("recovered y = {y} fails g^y = x")));
        }
    }
    Err(HspError::Failure(format!("no unit u after {DLOG_RETRY_CAP} samples")))
}
