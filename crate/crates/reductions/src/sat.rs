//! Monotone 1-in-3 3SAT as a module homomorphism `Z_{4^N}^n -> Z_{4^N}` and its kernel.

use abelian_solver::{integer_kernel, solve_abelian, AbelianDecomposition};
use group_core::{GroupSpec, HspError, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use sampling::HidingOracle;

pub const MAX_CLAUSES: usize = 8;
pub const MAX_VARS: usize = 24;
/// Largest `|G| = 4^{Nn}` handed to the simulated abelian solver.
pub const HSP_CAP: usize = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SatInstance {
    n: usize,
    clauses: Vec<[usize; 3]>,
    fresh_first: bool,
}

impl SatInstance {
    /// Variables are 0-based. The first-clause flag is set when clause 0 is `(0, 1, 2)` and
    /// those variables occur nowhere else.
    pub fn new(n: usize, clauses: Vec<[usize; 3]>) -> Result<Self> {
        if clauses.is_empty() {
            return Err(HspError::Domain("at least one clause is required".into()));
        }
        for (i, c) in clauses.iter().enumerate() {
            if c.iter().any(|&x| x >= n) {
                return Err(HspError::Domain(format!("clause {i} uses a variable outside 0..{n}")));
            }
            if c[0] == c[1] || c[1] == c[2] || c[0] == c[2] {
                return Err(HspError::Domain(format!("clause {i} repeats a variable")));
            }
        }
        let mut first = clauses[0];
        first.sort_unstable();
        let fresh_first = first == [0, 1, 2] && clauses[1..].iter().all(|c| c.iter().all(|&x| x > 2));
        Ok(SatInstance { n, clauses, fresh_first })
    }

    /// Prepends the clause `(x1, x2, x3)` on three new variables.
    pub fn with_fresh_first(&self) -> Self {
        let mut clauses = vec![[0, 1, 2]];
        clauses.extend(self.clauses.iter().map(|c| c.map(|x| x + 3)));
        SatInstance { n: self.n + 3, clauses, fresh_first: true }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn clauses(&self) -> &[[usize; 3]] {
        &self.clauses
    }

    pub fn num_clauses(&self) -> usize {
        self.clauses.len()
    }

    pub fn fresh_first(&self) -> bool {
        self.fresh_first
    }

    /// Exactly one true variable per clause.
    pub fn satisfies(&self, x: &[bool]) -> bool {
        self.clauses.iter().all(|c| c.iter().filter(|&&v| x[v]).count() == 1)
    }

    /// Every satisfying assignment, by enumeration of `{0,1}^n`.
    pub fn solutions(&self) -> Result<Vec<Vec<bool>>> {
        if self.n > MAX_VARS {
            return Err(HspError::Capacity { what: "assignment enumeration".into(), size: self.n, cap: MAX_VARS });
        }
        Ok((0..1u64 << self.n).map(|m| bits(self.n, m)).filter(|x| self.satisfies(x)).collect())
    }

    /// One clause per line, `c v1 v2 v3` with 1-based variables.
    pub fn to_text(&self) -> String {
        let mut s = format!("n {}\n", self.n);
        for c in &self.clauses {
            s += &format!("c {} {} {}\n", c[0] + 1, c[1] + 1, c[2] + 1);
        }
        s
    }
}

pub fn bits(n: usize, m: u64) -> Vec<bool> {
    (0..n).map(|i| m >> i & 1 == 1).collect()
}

/// Lines `c v1 v2 v3` (1-based), an optional `n <count>` line, `#` comments. Without a count the
/// largest variable index is used.
pub fn parse_sat(text: &str) -> Result<SatInstance> {
    let mut n = None;
    let mut clauses = Vec::new();
    for raw in text.lines() {
        let l = raw.split('#').next().unwrap_or("").trim();
        if l.is_empty() {
            continue;
        }
        let toks: Vec<&str> = l.split_whitespace().collect();
        let nums = |t: &[&str]| -> Result<Vec<usize>> {
            t.iter().map(|x| x.parse::<usize>().map_err(|e| HspError::Parse(format!("`{l}`: {e}")))).collect()
        };
        match toks[0] {
            "n" if toks.len() == 2 => n = Some(nums(&toks[1..])?[0]),
            "c" if toks.len() == 4 => {
                let v = nums(&toks[1..])?;
                if v.contains(&0) {
                    return Err(HspError::Parse(format!("`{l}`: variables are 1-based")));
                }
                clauses.push([v[0] - 1, v[1] - 1, v[2] - 1]);
            }
            _ => return Err(HspError::Parse(format!("unrecognised line `{l}`"))),
        }
    }
    let max = clauses.iter().flatten().map(|&x| x + 1).max().unwrap_or(0);
    SatInstance::new(n.unwrap_or(max), clauses).map_err(|e| HspError::Parse(e.to_string()))
}

/// `x -> sum_j c_j x_j mod M`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleHom {
    pub modulus: BigInt,
    pub coeffs: Vec<BigInt>,
}

impl ModuleHom {
    pub fn eval(&self, x: &[BigInt]) -> BigInt {
        let s: BigInt = self.coeffs.iter().zip(x).map(|(c, v)| c * v).sum();
        s.mod_floor(&self.modulus)
    }

    pub fn eval_bits(&self, x: &[bool]) -> BigInt {
        let s: BigInt = self.coeffs.iter().zip(x).filter(|(_, &b)| b).map(|(c, _)| c.clone()).sum();
        s.mod_floor(&self.modulus)
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SatOracle {
    pub hom: ModuleHom,
    /// `(4^N - 1) / 3`, all base-4 digits equal to 1.
    pub target: BigInt,
}

pub fn four_pow(k: usize) -> BigInt {
    BigInt::one() << (2 * k)
}

/// `f(x) = sum_i (sum_k x_{sigma_i(k)}) 4^i mod 4^N`.
pub fn sat_oracle(inst: &SatInstance) -> Result<SatOracle> {
    let big_n = inst.num_clauses();
    if big_n > MAX_CLAUSES || inst.n > MAX_VARS {
        return Err(HspError::Domain(format!(
            "N = {big_n}, n = {} exceeds N <= {MAX_CLAUSES}, n <= {MAX_VARS}",
            inst.n
        )));
    }
    let mut coeffs = vec![BigInt::zero(); inst.n];
    for (i, c) in inst.clauses.iter().enumerate() {
        for &v in c {
            coeffs[v] += four_pow(i);
        }
    }
    let modulus = four_pow(big_n);
    let target = (&modulus - 1u32) / 3u32;
    Ok(SatOracle { hom: ModuleHom { modulus, coeffs }, target })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KernelMethod {
    Snf,
    Hsp,
}

/// Generators of `Ker f`, each reduced into `[0, M)^n` and checked to satisfy `f = 0`.
pub fn kernel_generators<R: Rng + ?Sized>(hom: &ModuleHom, method: KernelMethod, rng: &mut R) -> Result<Vec<Vec<BigInt>>> {
    let n = hom.dim();
    let m = &hom.modulus;
    let gens: Vec<Vec<BigInt>> = match method {
        KernelMethod::Snf => {
            let mut row = hom.coeffs.clone();
            row.push(m.clone());
            integer_kernel(&vec![row], n + 1).into_iter().map(|v| v[..n].to_vec()).collect()
        }
        KernelMethod::Hsp => {
            let mu: usize = m.try_into().map_err(|_| HspError::Capacity { what: "hsp kernel".into(), size: usize::MAX, cap: HSP_CAP })?;
            let size = mu.checked_pow(n as u32).filter(|&s| s <= HSP_CAP);
            let Some(_) = size else {
                return Err(HspError::Capacity { what: "hsp kernel group".into(), size: usize::MAX, cap: HSP_CAP });
            };
            let g = GroupSpec::abelian(&vec![mu; n]);
            let dec = AbelianDecomposition::standard(&g)?;
            let h2 = hom.clone();
            let g2 = g.clone();
            let oracle = HidingOracle::from_fn(g.clone(), move |x| {
                let c: Vec<BigInt> = g2.coords(x).into_iter().map(BigInt::from).collect();
                u64::try_from(h2.eval(&c)).expect("value below the modulus")
            });
            let h = solve_abelian(&g, &dec, &oracle, None, rng)?;
            h.generators().iter().map(|&x| g.coords(x).into_iter().map(BigInt::from).collect()).collect()
        }
    };
    let gens: Vec<Vec<BigInt>> = gens.into_iter().map(|v| v.iter().map(|x| x.mod_floor(m)).collect()).collect();
    if let Some(bad) = gens.iter().find(|g| !hom.eval(g).is_zero()) {
        return Err(HspError::Invariant(format!("generator {bad:?} is not in the kernel")));
    }
    Ok(gens)
}

/// Hermite normal form of the row lattice spanned by `rows`, pivots taken in column order `order`.
/// Returns the nonzero rows, each with a positive pivot and entries above it reduced.
pub fn hermite_rows(rows: &[Vec<BigInt>], order: &[usize]) -> Vec<Vec<BigInt>> {
    let mut work: Vec<Vec<BigInt>> = rows.to_vec();
    let mut out: Vec<Vec<BigInt>> = Vec::new();
    for &col in order {
        // Euclid on the column until at most one row has a nonzero entry.
        loop {
            let nz: Vec<usize> = (0..work.len()).filter(|&i| !work[i][col].is_zero()).collect();
            if nz.len() <= 1 {
                break;
            }
            let piv = *nz.iter().min_by_key(|&&i| work[i][col].abs()).expect("nonempty");
            for &i in &nz {
                if i != piv {
                    let q = work[i][col].div_floor(&work[piv][col]);
                    let p = work[piv].clone();
                    for (a, b) in work[i].iter_mut().zip(&p) {
                        *a -= &q * b;
                    }
                }
            }
        }
        let Some(i) = (0..work.len()).find(|&i| !work[i][col].is_zero()) else { continue };
        let mut row = work.swap_remove(i);
        if row[col].is_negative() {
            row.iter_mut().for_each(|x| *x = -x.clone());
        }
        for prev in out.iter_mut() {
            let q = prev[col].div_floor(&row[col]);
            for (a, b) in prev.iter_mut().zip(&row) {
                *a -= &q * b;
            }
        }
        out.push(row);
    }
    out
}

/// Exact rank over the rationals by fraction-free elimination.
pub fn rank(rows: &[Vec<BigInt>]) -> usize {
    let mut a = rows.to_vec();
    let cols = a.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        for i in r + 1..a.len() {
            if a[i][c].is_zero() {
                continue;
            }
            let (x, y) = (a[r][c].clone(), a[i][c].clone());
            let pr = a[r].clone();
            for (v, w) in a[i].iter_mut().zip(&pr) {
                *v = &*v * &x - w * &y;
            }
        }
        r += 1;
    }
    r
}

/// `n - 1` independent kernel vectors `b^j = e_j + t_j e_u` (`j != u`, `t_j` in `[0, M)`), which
/// together with `M Z^n` generate the lift of `Ker f`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelBasis {
    pub modulus: BigInt,
    /// Pivot coordinate whose coefficient is a unit mod `M`.
    pub pivot: usize,
    pub vectors: Vec<Vec<BigInt>>,
}

impl KernelBasis {
    /// `x mod M` lies in the span of the basis, read off the unit-pivot structure.
    pub fn contains(&self, x: &[BigInt]) -> bool {
        let n = x.len();
        let u = self.pivot;
        let mut acc = x[u].clone();
        let mut k = 0;
        for j in 0..n {
            if j == u {
                continue;
            }
            acc -= &x[j] * &self.vectors[k][u];
            k += 1;
        }
        acc.mod_floor(&self.modulus).is_zero()
    }
}

/// Hermite reduction of `gens` together with `M e_i`, the unit-pivot coordinate ordered last.
pub fn extract_basis(hom: &ModuleHom, gens: &[Vec<BigInt>]) -> Result<KernelBasis> {
    let n = hom.dim();
    let m = &hom.modulus;
    if n < 2 {
        return Err(HspError::Failure("kernel extraction needs n >= 2".into()));
    }
    let Some(u) = (0..n).find(|&j| hom.coeffs[j].gcd(m).is_one()) else {
        return Err(HspError::Failure(format!("degenerate homomorphism: no coefficient of {:?} is a unit mod {m}", hom.coeffs)));
    };
    let mut rows = gens.to_vec();
    for i in 0..n {
        let mut e = vec![BigInt::zero(); n];
        e[i] = m.clone();
        rows.push(e);
    }
    let order: Vec<usize> = (0..n).filter(|&j| j != u).chain([u]).collect();
    let h = hermite_rows(&rows, &order);
    if h.len() != n {
        return Err(HspError::Failure(format!("lattice rank {} differs from {n}", h.len())));
    }
    for (k, &col) in order[..n - 1].iter().enumerate() {
        if !h[k][col].is_one() {
            return Err(HspError::Failure(format!(
                "generators miss part of the kernel: pivot {} at coordinate {col}",
                h[k][col]
            )));
        }
    }
    if h[n - 1][u] != *m {
        return Err(HspError::Failure(format!("last pivot {} differs from M = {m}", h[n - 1][u])));
    }
    let vectors: Vec<Vec<BigInt>> = h[..n - 1].to_vec();
    if let Some(bad) = vectors.iter().find(|b| !hom.eval(b).is_zero()) {
        return Err(HspError::Invariant(format!("extracted {bad:?} is not in the kernel")));
    }
    if rank(&vectors) != n - 1 {
        return Err(HspError::Failure("extracted vectors are dependent".into()));
    }
    Ok(KernelBasis { modulus: m.clone(), pivot: u, vectors })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SatKernel {
    pub oracle: SatOracle,
    pub generators: Vec<Vec<BigInt>>,
    pub basis: KernelBasis,
    /// `p` with `f(p) = target`, supported on the pivot coordinate.
    pub p: Vec<BigInt>,
}

impl SatKernel {
    /// `x - p` lies in `H`.
    pub fn in_target_coset(&self, x: &[bool]) -> bool {
        let d: Vec<BigInt> = x.iter().zip(&self.p).map(|(&b, p)| BigInt::from(b as u8) - p).collect();
        self.basis.contains(&d)
    }

    /// `(p + H) n {0,1}^n` by enumeration.
    pub fn binary_coset_points(&self) -> Vec<Vec<bool>> {
        let n = self.p.len();
        (0..1u64 << n).map(|m| bits(n, m)).filter(|x| self.in_target_coset(x)).collect()
    }
}

pub fn sat_kernel<R: Rng + ?Sized>(inst: &SatInstance, method: KernelMethod, rng: &mut R) -> Result<SatKernel> {
    let oracle = sat_oracle(inst)?;
    let generators = kernel_generators(&oracle.hom, method, rng)?;
    let basis = extract_basis(&oracle.hom, &generators)?;
    let m = &oracle.hom.modulus;
    let u = basis.pivot;
    let inv = mod_inverse(&oracle.hom.coeffs[u], m).expect("pivot is a unit");
    let mut p = vec![BigInt::zero(); inst.n];
    p[u] = (&oracle.target * inv).mod_floor(m);
    Ok(SatKernel { oracle, generators, basis, p })
}

pub fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(m).extended_gcd(m);
    e.gcd.is_one().then(|| e.x.mod_floor(m))
}
