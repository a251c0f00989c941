use std::collections::HashSet;

use group_core::{Elem, GroupSpec, HspError, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use rand::Rng;
use sampling::HidingOracle;

use crate::snf::integer_kernel;

/// `G = <g_1> x ... x <g_k>` with `ord(g_i) = t_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianDecomposition {
    pub orders: Vec<usize>,
    pub generators: Vec<Elem>,
}

impl AbelianDecomposition {
    /// Unit coordinate vectors of a product of cyclic groups.
    pub fn standard(g: &GroupSpec) -> Result<Self> {
        let orders = g
            .cyclic_factors()
            .ok_or_else(|| HspError::Precondition(format!("{g} is not a product of cyclic groups")))?;
        let mut generators = Vec::with_capacity(orders.len());
        for i in 0..orders.len() {
            let mut c = vec![0; orders.len()];
            c[i] = 1 % orders[i].max(1);
            generators.push(g.from_coords(&c)?);
        }
        Ok(AbelianDecomposition { orders, generators })
    }

    pub fn order(&self) -> usize {
        self.orders.iter().product()
    }

    /// Exponent `e = lcm(t_i)`.
    pub fn exponent(&self) -> usize {
        self.orders.iter().fold(1, |a, &t| a.lcm(&t))
    }

    /// `sum x_i g_i`.
    pub fn embed(&self, g: &GroupSpec, x: &[usize]) -> Elem {
        self.generators.iter().zip(x).fold(0, |acc, (&gen, &xi)| g.mul(acc, g.pow(gen, xi as u64)))
    }

    /// Every coordinate vector in mixed-radix order.
    pub fn all_coords(&self) -> Vec<Vec<usize>> {
        let mut out = vec![vec![0; self.orders.len()]];
        for (i, &t) in self.orders.iter().enumerate() {
            let prev = std::mem::take(&mut out);
            for c in 0..t {
                for p in &prev {
                    let mut q = p.clone();
                    q[i] = c;
                    out.push(q);
                }
            }
        }
        out
    }

    /// Checks orders, product and that the generators reach every element exactly once.
    pub fn verify(&self, g: &GroupSpec) -> Result<()> {
        if self.order() != g.order() {
            return Err(HspError::Invariant(format!("decomposition order {} vs |G| = {}", self.order(), g.order())));
        }
        for (&gen, &t) in self.generators.iter().zip(&self.orders) {
            if g.element_order(gen) != t {
                return Err(HspError::Invariant(format!("generator {gen} does not have order {t}")));
            }
        }
        let mut hit = vec![false; g.order()];
        for x in self.all_coords() {
            let e = self.embed(g, &x);
            if std::mem::replace(&mut hit[e], true) {
                return Err(HspError::Invariant("decomposition is not a direct product".into()));
            }
        }
        Ok(())
    }
}

/// Character index `g`, read as `chi_g(x) = exp(2 pi i sum g_i x_i / t_i)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CharacterSample {
    pub coords: Vec<usize>,
}

/// `sum g_i x_i e/t_i mod e`; the character is trivial on `x` exactly when this is 0.
pub fn pairing(orders: &[usize], g: &[usize], x: &[usize]) -> usize {
    let e = orders.iter().fold(1usize, |a, &t| a.lcm(&t));
    orders.iter().zip(g).zip(x).fold(0, |acc, ((&t, &gi), &xi)| (acc + gi * xi % t * (e / t)) % e)
}

/// Simulated measurement device: the coset structure is read off the oracle by brute force,
/// after which a measurement is a uniform draw from `H^perp`.
#[derive(Debug, Clone)]
pub struct HperpSampler {
    orders: Vec<usize>,
    hidden: Vec<Vec<usize>>,
    hperp: Vec<Vec<usize>>,
}

impl HperpSampler {
    pub fn new(g: &GroupSpec, dec: &AbelianDecomposition, oracle: &HidingOracle) -> Result<Self> {
        if dec.order() != g.order() {
            return Err(HspError::Precondition("decomposition does not match the group".into()));
        }
        let coords = dec.all_coords();
        let values: Vec<u64> = coords.iter().map(|x| oracle.eval(dec.embed(g, x))).collect();
        let y0 = values[0];
        let hidden: Vec<Vec<usize>> =
            coords.iter().zip(&values).filter(|(_, &v)| v == y0).map(|(x, _)| x.clone()).collect();
        let distinct: HashSet<u64> = values.iter().copied().collect();
        if hidden.len() * distinct.len() != coords.len() {
            return Err(HspError::Inconsistent("oracle level sets are not cosets of one subgroup".into()));
        }
        let gens = small_generating_set(&dec.orders, &hidden);
        let hperp =
            coords.into_iter().filter(|c| gens.iter().all(|h| pairing(&dec.orders, c, h) == 0)).collect();
        Ok(HperpSampler { orders: dec.orders.clone(), hidden, hperp })
    }

    pub fn hperp(&self) -> &[Vec<usize>] {
        &self.hperp
    }

    /// Coordinates of the hidden subgroup as the simulator sees it.
    pub fn hidden_coords(&self) -> &[Vec<usize>] {
        &self.hidden
    }

    pub fn orders(&self) -> &[usize] {
        &self.orders
    }

    pub fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> CharacterSample {
        CharacterSample { coords: self.hperp[rng.gen_range(0..self.hperp.len())].clone() }
    }
}

pub fn sample_hperp<R: Rng + ?Sized>(
    g: &GroupSpec,
    dec: &AbelianDecomposition,
    oracle: &HidingOracle,
    rng: &mut R,
) -> Result<CharacterSample> {
    Ok(HperpSampler::new(g, dec, oracle)?.draw(rng))
}

fn add_coords(orders: &[usize], a: &[usize], b: &[usize]) -> Vec<usize> {
    orders.iter().zip(a).zip(b).map(|((&t, &x), &y)| (x + y) % t).collect()
}

/// Greedy generating set: keep an element whenever it lies outside the span so far.
pub fn small_generating_set(orders: &[usize], elems: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let zero = vec![0; orders.len()];
    let mut span: HashSet<Vec<usize>> = [zero].into_iter().collect();
    let mut gens = Vec::new();
    for x in elems {
        if span.contains(x) {
            continue;
        }
        gens.push(x.clone());
        let mut frontier: Vec<Vec<usize>> = span.iter().cloned().collect();
        while let Some(y) = frontier.pop() {
            let z = add_coords(orders, &y, x);
            if span.insert(z.clone()) {
                frontier.push(z);
            }
        }
    }
    gens
}

/// Generators (as coordinate vectors) of `{x : chi_g(x) = 1 for every sampled g}`, from the
/// integer kernel of `[A | e I]` where row `j` of `A` is `(g_j,i * e / t_i)_i`.
pub fn character_kernel(orders: &[usize], samples: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let k = orders.len();
    let e = orders.iter().fold(1usize, |a, &t| a.lcm(&t));
    let rows: Vec<&Vec<usize>> = samples.iter().filter(|g| g.iter().any(|&x| x != 0)).collect();
    if rows.is_empty() {
        return (0..k)
            .map(|i| (0..k).map(|j| usize::from(i == j) % orders[j].max(1)).collect())
            .collect();
    }
    let s = rows.len();
    let m: Vec<Vec<BigInt>> = rows
        .iter()
        .enumerate()
        .map(|(j, g)| {
            let mut r: Vec<BigInt> = (0..k).map(|i| BigInt::from(g[i] * (e / orders[i]))).collect();
            r.extend((0..s).map(|l| BigInt::from(if l == j { e } else { 0 })));
            r
        })
        .collect();
    integer_kernel(&m, k + s)
        .into_iter()
        .map(|v| {
            (0..k)
                .map(|i| {
                    let t = BigInt::from(orders[i]);
                    v[i].mod_floor(&t).to_usize().expect("reduced coordinate fits")
                })
                .collect::<Vec<usize>>()
        })
        .filter(|x| x.iter().any(|&c| c != 0))
        .collect()
}

/// Period of a cyclic oracle found by walking `f(1), f(2), ...` until `f(0)` repeats; this is
/// the classical side of the simulator, never exposed to the solvers.
pub fn cyclic_period(n: u128, f: &dyn Fn(u128) -> u64) -> Result<u128> {
    let y0 = f(0);
    let mut x = 1u128;
    while x < n && f(x) != y0 {
        x += 1;
    }
    if n % x != 0 {
        return Err(HspError::Inconsistent(format!("period {x} does not divide {n}")));
    }
    Ok(x)
}

/// One weak Fourier sample on `Z_n` for an oracle hiding `dZ_n`: `lambda * n / d` with
/// `lambda` uniform.
pub fn sample_cyclic<R: Rng + ?Sized>(n: u128, period: u128, rng: &mut R) -> u128 {
    rng.gen_range(0..period) * (n / period)
}

/// Closure of coordinate generators inside `prod Z_{t_i}`.
pub fn coord_span(orders: &[usize], gens: &[Vec<usize>]) -> HashSet<Vec<usize>> {
    let elems = small_generating_set(orders, gens);
    let zero = vec![0; orders.len()];
    let mut span: HashSet<Vec<usize>> = HashSet::from([zero.clone()]);
    let mut frontier = vec![zero];
    while let Some(y) = frontier.pop() {
        for x in &elems {
            let z = add_coords(orders, &y, x);
            if span.insert(z.clone()) {
                frontier.push(z);
            }
        }
    }
    span
}
