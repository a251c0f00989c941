use group_core::{HspError, Result};
use num_bigint::BigInt;
use num_rational::BigRational;

/// `v_1 + v_2 (2M) + ... + v_n (2M)^{n-1}` for `v` in `Z_{2M}^n`. Two-point vectors live in
/// `Z_M^n`, a subset of the accepted domain.
pub fn two_point_index_map(m: u64, v: &[u64]) -> Result<u128> {
    let base = 2 * m as u128;
    let mut acc = 0u128;
    let mut scale = 1u128;
    for (i, &x) in v.iter().enumerate() {
        if x as u128 >= base {
            return Err(HspError::Domain(format!("entry {i} = {x} is not below 2M = {base}")));
        }
        acc = scale
            .checked_mul(x as u128)
            .and_then(|t| acc.checked_add(t))
            .ok_or_else(|| HspError::Domain("index exceeds 128 bits".into()))?;
        if i + 1 < v.len() {
            scale = scale.checked_mul(base).ok_or_else(|| HspError::Domain("index exceeds 128 bits".into()))?;
        }
    }
    Ok(acc)
}

#[derive(Debug, Clone, PartialEq)]
pub struct EliminationProfile {
    pub n: u32,
    /// Entry `k - 1` is the number of slopes ruled out with certainty by label `k`, `2^{i_k}`.
    pub per_k: Vec<u64>,
    /// Same counts obtained by listing the `d` with `cos^2(pi k d / N) = 0`.
    pub per_k_brute: Vec<u64>,
    /// Slopes ruled out by `psi2` or `psi3`.
    pub one_dim: u64,
    /// Weighted sum of the counts.
    pub expected: BigRational,
    /// `1 + n/4`.
    pub closed_form: BigRational,
}

fn ratio(a: u64, b: u64) -> BigRational {
    BigRational::new(BigInt::from(a), BigInt::from(b))
}

/// Expected number of slopes eliminated with certainty by one strong sample over `D_{2^n}`.
/// Every label `k` in `1..N` has weight `1/(2N)` and each of `psi2`, `psi3` weighs `1/N`.
pub fn elimination_profile(n: u32) -> Result<EliminationProfile> {
    if !(2..=20).contains(&n) {
        return Err(HspError::Domain(format!("n = {n} must lie in 2..=20")));
    }
    let big = 1u64 << n;
    let per_k: Vec<u64> = (1..big).map(|k| 1u64 << k.trailing_zeros()).collect();
    let per_k_brute: Vec<u64> = if n <= 10 {
        (1..big)
            .map(|k| (0..big).filter(|&d| 2 * (k * d % big) == big).count() as u64)
            .collect()
    } else {
        Vec::new()
    };
    let one_dim = big / 2;
    let mut expected = ratio(2 * one_dim, big);
    for &c in &per_k {
        expected += ratio(c, 2 * big);
    }
    let closed_form = ratio(1, 1) + ratio(n as u64, 4);
    Ok(EliminationProfile { n, per_k, per_k_brute, one_dim, expected, closed_form })
}
