//! GapCVP in the infinity norm built from the kernel of the SAT homomorphism, and a brute-force
//! check that both sides give the same answer.

use group_core::{HspError, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::sat::{bits, SatInstance, SatKernel};

pub type Q = BigRational;

fn q(x: &BigInt) -> Q {
    Q::from_integer(x.clone())
}

/// Basis of `R^{2n}` as columns of `C`:
///
/// ```text
/// [ b^1 .. b^{n-1}  M e_j  M I ]
/// [ 0   ..  0       0      e I ]
/// ```
///
/// with target `v = (-p + 1/2, 0)` and bound `d = 1/2`.
#[derive(Debug, Clone, PartialEq)]
pub struct LatticeInstance {
    pub n: usize,
    pub modulus: BigInt,
    /// `C[row][col]`, `2n x 2n`.
    pub basis: Vec<Vec<Q>>,
    pub target: Vec<Q>,
    pub bound: Q,
    pub epsilon: Q,
    pub r: BigInt,
    pub m_b: BigInt,
    /// Kernel vectors `b^1 .. b^{n-1}`.
    pub b: Vec<Vec<BigInt>>,
    /// `b^n = M k`, with `k = e_j`.
    pub k: Vec<BigInt>,
    pub completion: usize,
    pub p: Vec<BigInt>,
}

impl LatticeInstance {
    pub fn dim(&self) -> usize {
        2 * self.n
    }

    /// `C u`.
    pub fn point(&self, u: &[BigInt]) -> Vec<Q> {
        self.basis.iter().map(|row| row.iter().zip(u).map(|(c, x)| c * q(x)).sum()).collect()
    }
}

/// Exact determinant by Gaussian elimination over the rationals.
pub fn determinant(a: &[Vec<Q>]) -> Q {
    let n = a.len();
    let mut m = a.to_vec();
    let mut det = Q::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else { return Q::zero() };
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        det *= m[c][c].clone();
        for i in c + 1..n {
            if m[i][c].is_zero() {
                continue;
            }
            let f = &m[i][c] / &m[c][c];
            let pr = m[c].clone();
            for (x, y) in m[i].iter_mut().zip(&pr) {
                *x -= &f * y;
            }
        }
    }
    det
}

pub fn inf_distance(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).max().unwrap_or_else(Q::zero)
}

pub fn gapcvp_build(kernel: &SatKernel) -> Result<LatticeInstance> {
    let n = kernel.p.len();
    let m = kernel.basis.modulus.clone();
    let b = kernel.basis.vectors.clone();
    let m_b = BigInt::one() + b.iter().flatten().map(|x| x.abs()).max().unwrap_or_else(BigInt::zero);
    let r = (&m_b + 2u32).max(&m - 1u32);
    let epsilon = Q::new(BigInt::one(), 2u32 * &r);
    let top = |j: usize| -> Vec<Vec<Q>> {
        (0..n)
            .map(|i| {
                let mut row: Vec<Q> = b.iter().map(|v| q(&v[i])).collect();
                row.push(if i == j { q(&m) } else { Q::zero() });
                row
            })
            .collect()
    };
    let Some(j) = (0..n).find(|&j| !determinant(&top(j)).is_zero()) else {
        return Err(HspError::Failure("no completion 4^N e_j makes the basis nonsingular".into()));
    };
    let mut basis = vec![vec![Q::zero(); 2 * n]; 2 * n];
    for (i, row) in top(j).into_iter().enumerate() {
        for (c, x) in row.into_iter().enumerate() {
            basis[i][c] = x;
        }
        basis[i][n + i] = q(&m);
        basis[n + i][n + i] = epsilon.clone();
    }
    if determinant(&basis).is_zero() {
        return Err(HspError::Invariant("C is singular".into()));
    }
    let half = Q::new(BigInt::one(), BigInt::from(2));
    let mut target: Vec<Q> = kernel.p.iter().map(|p| -q(p) + &half).collect();
    target.extend((0..n).map(|_| Q::zero()));
    let mut k = vec![BigInt::zero(); n];
    k[j] = BigInt::one();
    Ok(LatticeInstance {
        n,
        modulus: m,
        basis,
        target,
        bound: half,
        epsilon,
        r,
        m_b,
        b,
        k,
        completion: j,
        p: kernel.p.clone(),
    })
}

/// Coefficients for the lattice point of a satisfying assignment: `x_j` on the kernel vectors,
/// `u_n = 0`, and the `M e_i` columns fixing the wrap-around.
pub fn forward_coefficients(lat: &LatticeInstance, pivot: usize, x: &[bool]) -> Option<Vec<BigInt>> {
    let n = lat.n;
    let mut u = vec![BigInt::zero(); 2 * n];
    let others: Vec<usize> = (0..n).filter(|&j| j != pivot).collect();
    for (k, &j) in others.iter().enumerate() {
        u[k] = BigInt::from(x[j] as u8);
    }
    for i in 0..n {
        let y: BigInt = (0..n - 1).map(|k| &u[k] * &lat.b[k][i]).sum();
        let want = BigInt::from(x[i] as u8) - &lat.p[i];
        let diff = want - y;
        if !diff.is_multiple_of(&lat.modulus) {
            return None;
        }
        u[n + i] = diff / &lat.modulus;
    }
    Some(u)
}

#[derive(Debug, Clone, PartialEq)]
pub struct CvpPoint {
    pub coefficients: Vec<BigInt>,
    pub distance: Q,
    /// Largest deviation over the first `n` coordinates.
    pub top_distance: Q,
    /// Largest deviation over the last `n` coordinates.
    pub bottom_distance: Q,
    /// `x + p mod M`, read as an assignment.
    pub assignment: Vec<bool>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReductionVerdict {
    pub sat: bool,
    /// `None` when the search cap was hit.
    pub cvp: Option<bool>,
    pub agree: bool,
    pub sat_solutions: usize,
    pub cvp_points: Vec<CvpPoint>,
    pub nodes: u64,
    /// Every point found has its distance attained on the first `n` coordinates.
    pub top_dominates: bool,
    /// Every point found decodes to a satisfying assignment.
    pub points_satisfy: bool,
}

pub const SEARCH_CAP: u64 = 50_000_000;

/// Integer `w` with `|w| <= bound` and `y + M w` in `{lo, lo + 1}`, preferring `lo`.
fn wrap(y: &BigInt, lo: &BigInt, m: &BigInt, bound: &BigInt) -> Option<BigInt> {
    for t in [lo.clone(), lo + 1u32] {
        let d = &t - y;
        if d.is_multiple_of(m) {
            let w = d / m;
            if w.abs() <= *bound {
                return Some(w);
            }
        }
    }
    None
}

struct Search<'a> {
    lat: &'a LatticeInstance,
    /// Coordinates whose value is fixed once the kernel coefficient at this depth is chosen.
    ready: Vec<Vec<usize>>,
    nodes: u64,
    cap: u64,
    found: Vec<Vec<BigInt>>,
    max_found: usize,
}

impl Search<'_> {
    fn bound_for(&self, i: usize) -> BigInt {
        if i == self.lat.completion {
            2u32 * &self.lat.r
        } else {
            self.lat.r.clone()
        }
    }

    fn lo(&self, i: usize) -> BigInt {
        -self.lat.p[i].clone()
    }

    fn dfs(&mut self, depth: usize, u: &mut Vec<BigInt>, y: &mut Vec<BigInt>) -> bool {
        let n = self.lat.n;
        if depth == n - 1 {
            let mut coeffs = u.clone();
            coeffs.resize(2 * n, BigInt::zero());
            for i in 0..n {
                let w = wrap(&y[i], &self.lo(i), &self.lat.modulus, &self.bound_for(i)).expect("checked");
                if i == self.lat.completion {
                    let c = w.clone().clamp(-self.lat.r.clone(), self.lat.r.clone());
                    coeffs[n - 1] = &w - &c;
                    coeffs[n + i] = c;
                } else {
                    coeffs[n + i] = w;
                }
            }
            self.found.push(coeffs);
            return self.found.len() < self.max_found;
        }
        let mut c = BigInt::zero();
        while c < self.lat.modulus {
            self.nodes += 1;
            if self.nodes > self.cap {
                return false;
            }
            for i in 0..n {
                y[i] += &c * &self.lat.b[depth][i];
            }
            let ok = self.ready[depth]
                .iter()
                .all(|&i| wrap(&y[i], &self.lo(i), &self.lat.modulus, &self.bound_for(i)).is_some());
            let go_on = if ok {
                u.push(c.clone());
                let r = self.dfs(depth + 1, u, y);
                u.pop();
                r
            } else {
                true
            };
            for i in 0..n {
                y[i] -= &c * &self.lat.b[depth][i];
            }
            if !go_on {
                return false;
            }
            c += 1u32;
        }
        true
    }
}

/// Enumerates lattice points of `B(R)` within `d = 1/2` of `v`, the kernel coefficients taken in
/// `[0, M)`. Returns the points (at most `max_points`), node count, and whether the cap was hit.
pub fn cvp_search(lat: &LatticeInstance, cap: u64, max_points: usize) -> (Vec<Vec<BigInt>>, u64, bool) {
    let n = lat.n;
    let last_dep: Vec<Option<usize>> = (0..n).map(|i| (0..n - 1).rev().find(|&k| !lat.b[k][i].is_zero())).collect();
    let mut ready = vec![Vec::new(); n.max(2) - 1];
    let mut root = Vec::new();
    for (i, d) in last_dep.iter().enumerate() {
        match d {
            Some(k) => ready[*k].push(i),
            None => root.push(i),
        }
    }
    let mut s = Search { lat, ready, nodes: 0, cap, found: Vec::new(), max_found: max_points.max(1) };
    let mut y = vec![BigInt::zero(); n];
    let root_ok = root.iter().all(|&i| wrap(&y[i], &s.lo(i), &lat.modulus, &s.bound_for(i)).is_some());
    if root_ok {
        s.dfs(0, &mut Vec::new(), &mut y);
    }
    let capped = s.nodes > cap;
    (s.found, s.nodes, capped)
}

fn describe(lat: &LatticeInstance, u: Vec<BigInt>) -> CvpPoint {
    let n = lat.n;
    let x = lat.point(&u);
    let dev: Vec<Q> = x.iter().zip(&lat.target).map(|(a, b)| (a - b).abs()).collect();
    let top = dev[..n].iter().max().cloned().unwrap_or_else(Q::zero);
    let bottom = dev[n..].iter().max().cloned().unwrap_or_else(Q::zero);
    let assignment: Vec<bool> = (0..n)
        .map(|i| (x[i].to_integer() + &lat.p[i]).mod_floor(&lat.modulus).is_one())
        .collect();
    CvpPoint { coefficients: u, distance: inf_distance(&x, &lat.target), top_distance: top, bottom_distance: bottom, assignment }
}

/// SAT by enumerating `{0,1}^n`, GapCVP by the bounded coefficient search.
pub fn reduction_verify(inst: &SatInstance, lat: &LatticeInstance) -> Result<ReductionVerdict> {
    if inst.n() != lat.n {
        return Err(HspError::Domain("instance and lattice dimensions differ".into()));
    }
    let sols: Vec<Vec<bool>> = (0..1u64 << inst.n()).map(|m| bits(inst.n(), m)).filter(|x| inst.satisfies(x)).collect();
    let (found, nodes, capped) = cvp_search(lat, SEARCH_CAP, 1 << 12);
    let points: Vec<CvpPoint> = found.into_iter().map(|u| describe(lat, u)).collect();
    let sat = !sols.is_empty();
    let cvp = if !points.is_empty() {
        Some(true)
    } else if capped {
        None
    } else {
        Some(false)
    };
    let top_dominates = points.iter().all(|p| p.bottom_distance <= p.top_distance && p.distance == p.top_distance);
    let points_satisfy = points.iter().all(|p| p.distance <= lat.bound && inst.satisfies(&p.assignment));
    Ok(ReductionVerdict {
        sat,
        cvp,
        agree: cvp == Some(sat),
        sat_solutions: sols.len(),
        cvp_points: points,
        nodes,
        top_dominates,
        points_satisfy,
    })
}
