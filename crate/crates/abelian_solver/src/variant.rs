//! Iterative reduction: each character sample shrinks the ambient group to its kernel.

use group_core::{subgroup_closure, GroupSpec, HspError, Result, Subgroup};
use num_integer::Integer;
use rand::Rng;
use sampling::HidingOracle;

use crate::decompose::decompose_generated;
use crate::hperp::{character_kernel, cyclic_period, sample_cyclic, AbelianDecomposition, HperpSampler};
use crate::solve::ceil_log2;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclicVariantReport {
    pub d: u64,
    pub steps: usize,
    /// `a_0, a_1, ..., a_m`.
    pub trace: Vec<u64>,
}

pub fn cyclic_steps(n: u64, c: f64) -> usize {
    (2.0 * c * (n.max(2) as f64).log2()).ceil() as usize
}

/// Works in `a_k Z_N = Z_{N/a_k}` with `f_k(x) = f(a_k x)`; each sample `lambda N_k / d_k`
/// contributes the denominator of `lambda / d_k`.
pub fn cyclic_variant<R: Rng + ?Sized>(n: u64, f: &dyn Fn(u64) -> u64, c: f64, rng: &mut R) -> Result<CyclicVariantReport> {
    if n == 0 {
        return Err(HspError::Domain("N must be positive".into()));
    }
    let m = cyclic_steps(n, c);
    let mut a = 1u64;
    let mut trace = vec![a];
    for _ in 0..m {
        let nk = n / a;
        let fk = |x: u128| f((a as u128 * x % n as u128) as u64);
        let dk = cyclic_period(nk as u128, &fk)?;
        let s = sample_cyclic(nk as u128, dk, rng) as u64;
        a *= nk / s.gcd(&nk);
        trace.push(a);
    }
    Ok(CyclicVariantReport { d: a, steps: m, trace })
}

/// Basis `u_i^k` of the current `G_k` together with the character sampled there.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionState {
    pub step: usize,
    pub basis: AbelianDecomposition,
    pub sample: Option<Vec<usize>>,
}

#[derive(Debug, Clone)]
pub struct AbelianVariantReport {
    pub hidden: Subgroup,
    pub basis: AbelianDecomposition,
    pub trace: Vec<ReductionState>,
}

fn decode(orders: &[usize], mut e: usize) -> Vec<usize> {
    orders
        .iter()
        .map(|&t| {
            let c = e % t;
            e /= t;
            c
        })
        .collect()
}

pub const VARIANT_C: usize = 4;

/// Stops as soon as every basis vector is hidden (`G_k = H`), or fails after
/// `2 c ceil(log2|G|)` samples.
pub fn abelian_variant<R: Rng + ?Sized>(
    g: &GroupSpec,
    dec: &AbelianDecomposition,
    oracle: &HidingOracle,
    rng: &mut R,
) -> Result<AbelianVariantReport> {
    if dec.order() != g.order() {
        return Err(HspError::Precondition("decomposition does not match the group".into()));
    }
    let cap = (2 * VARIANT_C * ceil_log2(g.order())).max(8);
    let y0 = oracle.eval(0);
    let mut basis = dec.clone();
    let mut trace = Vec::new();
    for step in 0..=cap {
        if basis.generators.iter().all(|&u| oracle.eval(u) == y0) {
            trace.push(ReductionState { step, basis: basis.clone(), sample: None });
            let hidden = subgroup_closure(g, &basis.generators)?;
            if hidden.order() != basis.order() {
                return Err(HspError::Invariant("final basis is not a direct sum".into()));
            }
            return Ok(AbelianVariantReport { hidden, basis, trace });
        }
        if step == cap {
            break;
        }
        let sub = GroupSpec::abelian(&basis.orders);
        let sub_dec = AbelianDecomposition::standard(&sub)?;
        let fk = {
            let (g, orc, b) = (g.clone(), oracle.clone(), basis.clone());
            HidingOracle::from_fn(sub.clone(), move |e| orc.eval(b.embed(&g, &decode(&b.orders, e))))
        };
        let sample = HperpSampler::new(&sub, &sub_dec, &fk)?.draw(rng).coords;
        trace.push(ReductionState { step, basis: basis.clone(), sample: Some(sample.clone()) });
        if sample.iter().all(|&x| x == 0) {
            continue;
        }
        let ker: Vec<usize> =
            character_kernel(&basis.orders, &[sample]).iter().map(|x| sub_dec.embed(&sub, x)).collect();
        let (kdec, _) = decompose_generated(&sub, &ker)?;
        let generators = kdec.generators.iter().map(|&e| basis.embed(g, &decode(&basis.orders, e))).collect();
        basis = AbelianDecomposition { orders: kdec.orders, generators };
    }
    Err(HspError::Failure(format!("no convergence within {cap} reduction steps")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{rngs::StdRng, SeedableRng};
    use sampling::oracle_from_subgroup;

    #[test]
    fn cyclic_examples() {
        let mut rng = StdRng::seed_from_u64(4);
        let r = cyclic_variant(12, &|x| x % 4, 2.0, &mut rng).unwrap();
        assert_eq!(r.d, 4);
        assert!(r.trace.iter().all(|a| 4 % a == 0));
        assert_eq!(cyclic_variant(12, &|_| 0, 2.0, &mut rng).unwrap().d, 1);
    }

    #[test]
    fn abelian_examples() {
        let mut rng = StdRng::seed_from_u64(6);
        let z12 = GroupSpec::cyclic(12);
        let dec = AbelianDecomposition::standard(&z12).unwrap();
        let h = subgroup_closure(&z12, &[4]).unwrap();
        let r = abelian_variant(&z12, &dec, &oracle_from_subgroup(&z12, &h).unwrap(), &mut rng).unwrap();
        assert_eq!(r.hidden.elements(), h.elements());
        assert_eq!(r.basis.orders, vec![3]);
        let whole = Subgroup::whole(&z12).unwrap();
        let r = abelian_variant(&z12, &dec, &oracle_from_subgroup(&z12, &whole).unwrap(), &mut rng).unwrap();
        assert_eq!(r.trace.len(), 1);
        assert_eq!(r.hidden.order(), 12);
    }
}
