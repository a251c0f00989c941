use std::collections::HashMap;

use group_core::{Elem, GroupSpec, HspError, Result};
use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use rand::Rng;

use crate::hperp::AbelianDecomposition;
use crate::snf::smith_normal_form;
use crate::solve::{ceil_log2, EXTRA_SAMPLES};

pub const DECOMPOSE_RETRY_CAP: usize = 10;

/// Relation lattice of `gens` inside `g`: row `i` reads `m_i e_i - c(g_i^{m_i})` where `m_i` is
/// the first power of `g_i` landing in the span of the earlier generators. Also returns the
/// size of the generated subgroup.
fn relations(g: &GroupSpec, gens: &[Elem]) -> (Vec<Vec<i64>>, usize) {
    let k = gens.len();
    let mut span: HashMap<Elem, Vec<i64>> = HashMap::from([(0, vec![0; k])]);
    let mut rows = Vec::with_capacity(k);
    for (i, &x) in gens.iter().enumerate() {
        let mut m = 1i64;
        let mut p = x;
        while !span.contains_key(&p) {
            p = g.mul(p, x);
            m += 1;
        }
        let mut row: Vec<i64> = span[&p].iter().map(|c| -c).collect();
        row[i] += m;
        rows.push(row);
        if m > 1 {
            let base: Vec<(Elem, Vec<i64>)> = span.iter().map(|(e, c)| (*e, c.clone())).collect();
            let mut step = x;
            for j in 1..m {
                for (e, c) in &base {
                    let mut c = c.clone();
                    c[i] = j;
                    span.insert(g.mul(*e, step), c);
                }
                step = g.mul(step, x);
            }
        }
    }
    (rows, span.len())
}

/// Direct-sum decomposition of `<gens>` in invariant-factor form, largest factor first.
pub fn decompose_generated(g: &GroupSpec, gens: &[Elem]) -> Result<(AbelianDecomposition, usize)> {
    let k = gens.len();
    let (rows, size) = relations(g, gens);
    if k == 0 || size == 1 {
        return Ok((AbelianDecomposition { orders: vec![], generators: vec![] }, size));
    }
    let a: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let snf = smith_normal_form(&a);
    let order = g.order() as i64;
    let mut parts = Vec::new();
    for (j, d) in snf.diagonal().iter().enumerate() {
        if d.is_one() {
            continue;
        }
        let d = d.to_usize().ok_or_else(|| HspError::Invariant("relation lattice is not full rank".into()))?;
        if d == 0 {
            return Err(HspError::Invariant("relation lattice is not full rank".into()));
        }
        // new generator j is the image of row j of V^-1
        let elem = snf.v_inv[j].iter().zip(gens).fold(0, |acc, (c, &x)| {
            let e = (c % BigInt::from(order)).to_i64().expect("reduced").rem_euclid(order);
            g.mul(acc, g.pow(x, e as u64))
        });
        parts.push((d, elem));
    }
    parts.sort_by(|a, b| b.0.cmp(&a.0));
    let dec = AbelianDecomposition {
        orders: parts.iter().map(|p| p.0).collect(),
        generators: parts.iter().map(|p| p.1).collect(),
    };
    if dec.order() != size {
        return Err(HspError::Invariant(format!("factor product {} differs from span size {size}", dec.order())));
    }
    for (&t, &x) in dec.orders.iter().zip(&dec.generators) {
        if g.element_order(x) != t {
            return Err(HspError::Invariant(format!("generator {x} does not have order {t}")));
        }
    }
    Ok((dec, size))
}

/// Draws `ceil(log2|G|) + 10` random elements and decomposes the group they generate,
/// retrying when they fall short of `G`.
pub fn decompose_abelian<R: Rng + ?Sized>(g: &GroupSpec, rng: &mut R) -> Result<AbelianDecomposition> {
    if !g.is_abelian() {
        return Err(HspError::Precondition(format!("{g} is not abelian")));
    }
    let n = g.order();
    if n == 1 {
        return Ok(AbelianDecomposition { orders: vec![], generators: vec![] });
    }
    let k = ceil_log2(n) + EXTRA_SAMPLES;
    for _ in 0..DECOMPOSE_RETRY_CAP {
        let gens: Vec<Elem> = (0..k).map(|_| rng.gen_range(0..n)).collect();
        let (dec, size) = decompose_generated(g, &gens)?;
        if size == n {
            return Ok(dec);
        }
    }
    Err(HspError::Failure(format!("random elements never generated {g}")))
}

/// Invariant factors with divisibility chain, largest first.
pub fn is_invariant_form(orders: &[usize]) -> bool {
    orders.iter().all(|&t| t > 1) && orders.windows(2).all(|w| w[0] % w[1] == 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{rngs::StdRng, SeedableRng};

    #[test]
    fn examples() {
        let mut rng = StdRng::seed_from_u64(8);
        let z1 = GroupSpec::cyclic(1);
        assert!(decompose_abelian(&z1, &mut rng).unwrap().orders.is_empty());
        let g = GroupSpec::abelian(&[2, 3]);
        let d = decompose_abelian(&g, &mut rng).unwrap();
        assert_eq!(d.orders, vec![6]);
        d.verify(&g).unwrap();
        let g = GroupSpec::abelian(&[4, 2]);
        let d = decompose_abelian(&g, &mut rng).unwrap();
        assert_eq!(d.orders, vec![4, 2]);
        d.verify(&g).unwrap();
        assert!(decompose_abelian(&GroupSpec::dihedral(3), &mut rng).is_err());
    }
}
