//! Graph automorphism and rigid graph isomorphism as hidden subgroup instances.

use std::collections::BTreeSet;
use std::sync::Arc;

use group_core::{perm, GroupSpec, HspError, Result, Subgroup};
use sampling::HidingOracle;

/// Largest vertex count for the `S_n` automorphism oracle.
pub const AUTO_MAX_N: usize = 8;
/// Largest vertex count for the `S_n wr Z_2` union oracle.
pub const WREATH_MAX_N: usize = 7;

/// Undirected simple graph on `0..n`, edges stored as sorted pairs `(u, v)` with `u < v`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

fn pair_index(u: usize, v: usize) -> usize {
    let (a, b) = if u < v { (u, v) } else { (v, u) };
    b * (b - 1) / 2 + a
}

impl Graph {
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut set = BTreeSet::new();
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(HspError::Domain(format!("edge ({u}, {v}) leaves 0..{n}")));
            }
            if u == v {
                return Err(HspError::Domain(format!("loop at {u}")));
            }
            if !set.insert((u.min(v), u.max(v))) {
                return Err(HspError::Domain(format!("duplicate edge ({u}, {v})")));
            }
        }
        Ok(Graph { n, edges: set.into_iter().collect() })
    }

    /// Graph whose edge set is the bitmask `mask` over the pair order `v(v-1)/2 + u`.
    pub fn from_mask(n: usize, mask: u64) -> Self {
        let mut edges = Vec::new();
        for v in 1..n {
            for u in 0..v {
                if mask >> pair_index(u, v) & 1 == 1 {
                    edges.push((u, v));
                }
            }
        }
        edges.sort_unstable();
        Graph { n, edges }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.binary_search(&(u.min(v), u.max(v))).is_ok()
    }

    /// Canonical encoding of the edge list, injective for `n <= 11`.
    pub fn mask(&self) -> u64 {
        self.edges.iter().fold(0, |m, &(u, v)| m | 1 << pair_index(u, v))
    }

    /// Mask of `p(E)` without building the graph.
    pub fn image_mask(&self, p: &[usize]) -> u64 {
        self.edges.iter().fold(0, |m, &(u, v)| m | 1 << pair_index(p[u], p[v]))
    }

    pub fn permute(&self, p: &[usize]) -> Graph {
        let mut edges: Vec<_> = self.edges.iter().map(|&(u, v)| (p[u].min(p[v]), p[u].max(p[v]))).collect();
        edges.sort_unstable();
        Graph { n: self.n, edges }
    }

    pub fn complement(&self) -> Graph {
        let mut edges = Vec::new();
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.has_edge(u, v) {
                    edges.push((u, v));
                }
            }
        }
        Graph { n: self.n, edges }
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut adj = vec![Vec::new(); self.n];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(x) = stack.pop() {
            for &y in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Every `p` with `p(E) = E`, as Lehmer ranks in increasing order.
    pub fn automorphisms(&self) -> Result<Vec<usize>> {
        check_n(self.n, AUTO_MAX_N)?;
        let m = self.mask();
        Ok((0..perm::factorial(self.n)).filter(|&r| self.image_mask(&perm::unrank(self.n, r)) == m).collect())
    }

    pub fn is_rigid(&self) -> Result<bool> {
        check_n(self.n, AUTO_MAX_N)?;
        let m = self.mask();
        Ok((1..perm::factorial(self.n)).all(|r| self.image_mask(&perm::unrank(self.n, r)) != m))
    }

    /// Smallest image mask over all relabelings.
    pub fn canonical_mask(&self) -> Result<u64> {
        check_n(self.n, AUTO_MAX_N)?;
        Ok((0..perm::factorial(self.n)).map(|r| self.image_mask(&perm::unrank(self.n, r))).min().unwrap_or(0))
    }
}

fn check_n(n: usize, max: usize) -> Result<()> {
    if n > max {
        return Err(HspError::Capacity { what: "S_n enumeration".into(), size: n, cap: max });
    }
    Ok(())
}

/// Text format: first line is the vertex count, then one `u v` pair per line. `#` starts a
/// comment.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut lines = text.lines().map(|l| l.split('#').next().unwrap_or("").trim()).filter(|l| !l.is_empty());
    let n: usize = lines
        .next()
        .ok_or_else(|| HspError::Parse("missing vertex count".into()))?
        .parse()
        .map_err(|e| HspError::Parse(format!("vertex count: {e}")))?;
    let mut edges = Vec::new();
    for l in lines {
        let nums: Vec<usize> = l
            .split_whitespace()
            .map(|t| t.parse().map_err(|e| HspError::Parse(format!("edge line `{l}`: {e}"))))
            .collect::<Result<_>>()?;
        match nums[..] {
            [u, v] => edges.push((u, v)),
            _ => return Err(HspError::Parse(format!("edge line `{l}` needs two vertices"))),
        }
    }
    Graph::new(n, &edges).map_err(|e| HspError::Parse(e.to_string()))
}

/// `f(p) = p(E)` over `S_n`. The hidden subgroup `Aut(g)` is attached from brute force.
pub fn graph_auto_oracle(g: &Graph) -> Result<HidingOracle> {
    let auts = g.automorphisms()?;
    let sym = GroupSpec::symmetric(g.n);
    let hidden = Subgroup::from_elements(&sym, auts)?;
    let g2 = g.clone();
    let n = g.n;
    Ok(HidingOracle::from_fn(sym, move |r| g2.image_mask(&perm::unrank(n, r))).with_hidden(hidden))
}

/// Wreath element `(p, q, c)` from Lehmer ranks.
pub fn wreath_elem(n: usize, p: &[usize], q: &[usize], c: usize) -> usize {
    let f = perm::factorial(n);
    perm::rank(p) + f * perm::rank(q) + f * f * c
}

pub fn wreath_split(n: usize, x: usize) -> (Vec<usize>, Vec<usize>, usize) {
    let f = perm::factorial(n);
    (perm::unrank(n, x % f), perm::unrank(n, x / f % f), x / (f * f))
}

/// Action of `(p, q, c)` on the `2n` vertices of the disjoint union: `(p + q) o s^c`, where `s`
/// swaps the two halves.
pub fn wreath_embedding(n: usize, p: &[usize], q: &[usize], c: usize) -> Vec<usize> {
    (0..2 * n)
        .map(|v| {
            let v = if c == 1 { (v + n) % (2 * n) } else { v };
            if v < n {
                p[v]
            } else {
                n + q[v - n]
            }
        })
        .collect()
}

/// Some `w` with `w(E1) = E2`, by brute force over `S_n`.
pub fn find_isomorphism(g1: &Graph, g2: &Graph) -> Result<Option<Vec<usize>>> {
    if g1.n != g2.n || g1.edges.len() != g2.edges.len() {
        return Ok(None);
    }
    check_n(g1.n, WREATH_MAX_N.max(AUTO_MAX_N))?;
    let target = g2.mask();
    Ok((0..perm::factorial(g1.n)).map(|r| perm::unrank(g1.n, r)).find(|p| g1.image_mask(p) == target))
}

fn check_rigid_connected(g: &Graph, which: &str) -> Result<()> {
    if !g.is_connected() {
        return Err(HspError::Precondition(format!("{which} is not connected")));
    }
    if !g.is_rigid()? {
        return Err(HspError::Precondition(format!("{which} has a nontrivial automorphism")));
    }
    Ok(())
}

/// Automorphism action of `S_n wr Z_2` on `g1 + g2`: `f(p, q, 0) = p(E1) | q(E2)` and
/// `f(p, q, 1) = p(E2) | q(E1)`, the two halves packed side by side.
pub fn wreath_union_oracle(g1: &Graph, g2: &Graph) -> Result<HidingOracle> {
    let n = g1.n;
    if g2.n != n {
        return Err(HspError::Precondition(format!("vertex counts differ: {n} vs {}", g2.n)));
    }
    if n == 0 {
        return Err(HspError::Precondition("graphs need at least one vertex".into()));
    }
    check_n(n, WREATH_MAX_N)?;
    check_rigid_connected(g1, "first graph")?;
    check_rigid_connected(g2, "second graph")?;
    let f = perm::factorial(n);
    let perms: Vec<Vec<usize>> = (0..f).map(|r| perm::unrank(n, r)).collect();
    let m1: Arc<Vec<u64>> = Arc::new(perms.iter().map(|p| g1.image_mask(p)).collect());
    let m2: Arc<Vec<u64>> = Arc::new(perms.iter().map(|p| g2.image_mask(p)).collect());
    let shift = n * (n - 1) / 2;
    let group = GroupSpec::wreath_sym_z2(n);
    let mut hidden = vec![0];
    if let Some(w) = find_isomorphism(g1, g2)? {
        // (a, a^-1, 1) with a(E2) = E1.
        let a = perm::inverse(&w);
        hidden.push(wreath_elem(n, &a, &w, 1));
    }
    let hidden = Subgroup::from_elements(&group, hidden)?;
    Ok(HidingOracle::from_fn(group, move |x| {
        let (p, q, c) = (x % f, x / f % f, x / (f * f));
        if c == 0 {
            m1[p] | m2[q] << shift
        } else {
            m2[p] | m1[q] << shift
        }
    })
    .with_hidden(hidden))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IsoSolver {
    /// Scan the swapping half of the wreath group for a nontrivial element of the hidden subgroup.
    Exhaustive,
    /// Classical brute-force isomorphism search.
    External,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsoVerdict {
    pub isomorphic: bool,
    /// `w` with `w(E1) = E2`, checked edge by edge.
    pub witness: Option<Vec<usize>>,
    /// Both inputs were disconnected and their complements were used.
    pub complemented: bool,
    pub oracle_calls: u64,
}

/// Rigid graph isomorphism through the hidden subgroup `{Id}` or `{Id, (a, a^-1, 1)}`.
pub fn decide_rigid_iso(g1: &Graph, g2: &Graph, solver: IsoSolver) -> Result<IsoVerdict> {
    let no = |complemented| IsoVerdict { isomorphic: false, witness: None, complemented, oracle_calls: 0 };
    if g1.n != g2.n {
        return Ok(no(false));
    }
    let (c1, c2) = (g1.is_connected(), g2.is_connected());
    if c1 != c2 {
        return Ok(no(false));
    }
    let complemented = !c1;
    let (h1, h2) = if complemented { (g1.complement(), g2.complement()) } else { (g1.clone(), g2.clone()) };
    let oracle = wreath_union_oracle(&h1, &h2)?;
    let n = h1.n;
    let (witness, calls) = match solver {
        IsoSolver::External => (find_isomorphism(&h1, &h2)?, 0),
        IsoSolver::Exhaustive => {
            let f = perm::factorial(n);
            let y0 = oracle.eval(0);
            let mut calls = 1u64;
            let mut found = None;
            for x in f * f..2 * f * f {
                calls += 1;
                if oracle.eval(x) == y0 {
                    found = Some(x);
                    break;
                }
            }
            (found.map(|x| wreath_split(n, x).1), calls)
        }
    };
    if let Some(w) = &witness {
        if h1.permute(w) != h2 || g1.permute(w) != *g2 {
            return Err(HspError::Invariant(format!("witness {w:?} is not an isomorphism")));
        }
    }
    Ok(IsoVerdict { isomorphic: witness.is_some(), witness, complemented, oracle_calls: calls })
}

/// Sign of the swapping element `(a, a^-1, 1)` viewed in `S_{2n}`.
pub fn swap_signature(a: &[usize]) -> i32 {
    let n = a.len();
    perm::sign(&wreath_embedding(n, a, &perm::inverse(a), 1))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlternatingCheck {
    /// Vertices per padded component, `n` or `n + 1`.
    pub m: usize,
    pub padded: bool,
    pub sigma: Option<Vec<usize>>,
    pub sigma_even: bool,
    /// `sigma` fixes the padded union graph.
    pub sigma_is_automorphism: bool,
    /// The transposition of the two padding vertices fixes the union graph.
    pub tau_is_automorphism: bool,
}

fn union_graph(g1: &Graph, g2: &Graph) -> Graph {
    let n = g1.n;
    let mut edges = g1.edges.clone();
    edges.extend(g2.edges.iter().map(|&(u, v)| (u + n, v + n)));
    edges.sort_unstable();
    Graph { n: 2 * n, edges }
}

/// Construction behind the alternating-group variant: for odd `n` both graphs get an isolated
/// vertex, and the swapping involution is checked to be an even automorphism of the union.
pub fn alternating_check(g1: &Graph, g2: &Graph) -> Result<AlternatingCheck> {
    let n = g1.n;
    let padded = n % 2 == 1;
    let pad = |g: &Graph| if padded { Graph { n: g.n + 1, edges: g.edges.clone() } } else { g.clone() };
    let (p1, p2) = (pad(g1), pad(g2));
    let m = p1.n;
    let big = union_graph(&p1, &p2);
    let tau_is_automorphism = if padded {
        let mut t: Vec<usize> = (0..2 * m).collect();
        t.swap(m - 1, 2 * m - 1);
        big.permute(&t) == big
    } else {
        true
    };
    let Some(w) = find_isomorphism(g1, g2)? else {
        return Ok(AlternatingCheck { m, padded, sigma: None, sigma_even: true, sigma_is_automorphism: true, tau_is_automorphism });
    };
    let mut a = perm::inverse(&w);
    if padded {
        a.push(n);
    }
    let sigma = wreath_embedding(m, &a, &perm::inverse(&a), 1);
    Ok(AlternatingCheck {
        m,
        padded,
        sigma_even: perm::sign(&sigma) == 1,
        sigma_is_automorphism: big.permute(&sigma) == big,
        tau_is_automorphism,
        sigma: Some(sigma),
    })
}

/// One representative per isomorphism class of connected rigid graphs on `n <= 6` vertices.
pub fn rigid_graphs(n: usize) -> Result<Vec<Graph>> {
    check_n(n, 6)?;
    let pairs = n * n.saturating_sub(1) / 2;
    let f = perm::factorial(n);
    let perms: Vec<Vec<usize>> = (0..f).map(|r| perm::unrank(n, r)).collect();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for mask in 0..1u64 << pairs {
        let g = Graph::from_mask(n, mask);
        if !g.is_connected() || perms[1..].iter().any(|p| g.image_mask(p) == mask) {
            continue;
        }
        let canon = perms.iter().map(|p| g.image_mask(p)).min().unwrap_or(0);
        if seen.insert(canon) {
            out.push(Graph::from_mask(n, canon));
        }
    }
    Ok(out)
}

/// Smallest asymmetric tree: a spider with legs of lengths 1, 2 and 3.
pub fn asymmetric_tree7() -> Graph {
    Graph::new(7, &[(0, 1), (0, 2), (2, 3), (0, 4), (4, 5), (5, 6)]).expect("valid tree")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_examples() {
        let k3 = Graph::new(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(k3.automorphisms().unwrap().len(), 6);
        let path = Graph::new(3, &[(0, 1), (1, 2)]).unwrap();
        let auts = path.automorphisms().unwrap();
        assert_eq!(auts.len(), 2);
        assert_eq!(perm::unrank(3, auts[1]), vec![2, 1, 0]);
        assert!(asymmetric_tree7().is_rigid().unwrap());
        assert!(Graph::new(2, &[(1, 1)]).is_err());
        let g = parse_edge_list("3\n0 1\n# c\n1 2\n").unwrap();
        assert_eq!(g, path);
    }
}
