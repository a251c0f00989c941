use std::collections::HashSet;

use crate::error::{HspError, Result};
use crate::group::{enumerate_elements_capped, CayleyTable, Elem, GroupSpec, DEFAULT_CAP};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgroup {
    parent: GroupSpec,
    elements: Vec<Elem>,
    generators: Vec<Elem>,
}

impl Subgroup {
    /// Builds a subgroup from an explicit element set, verifying closure.
    pub fn from_elements(parent: &GroupSpec, mut elements: Vec<Elem>) -> Result<Self> {
        for &x in &elements {
            parent.check(x)?;
        }
        elements.sort_unstable();
        elements.dedup();
        let h = Subgroup { parent: parent.clone(), generators: elements.clone(), elements };
        h.verify()?;
        Ok(h)
    }

    pub fn trivial(parent: &GroupSpec) -> Self {
        Subgroup { parent: parent.clone(), elements: vec![0], generators: vec![] }
    }

    pub fn whole(parent: &GroupSpec) -> Result<Self> {
        let elements = enumerate_elements_capped(parent, DEFAULT_CAP)?;
        Ok(Subgroup { parent: parent.clone(), generators: elements.clone(), elements })
    }

    pub fn parent(&self) -> &GroupSpec {
        &self.parent
    }

    pub fn elements(&self) -> &[Elem] {
        &self.elements
    }

    pub fn generators(&self) -> &[Elem] {
        &self.generators
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn index(&self) -> usize {
        self.parent.order() / self.order()
    }

    pub fn contains(&self, x: Elem) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    /// Closure, identity, inverses and Lagrange.
    pub fn verify(&self) -> Result<()> {
        let g = &self.parent;
        if !self.contains(0) {
            return Err(HspError::Invariant("subgroup lacks the identity".into()));
        }
        if g.order() % self.order() != 0 {
            return Err(HspError::Invariant("subgroup order does not divide group order".into()));
        }
        for &a in &self.elements {
            if !self.contains(g.inv(a)) {
                return Err(HspError::Invariant(format!("inverse of {a} missing")));
            }
            for &b in &self.elements {
                if !self.contains(g.mul(a, b)) {
                    return Err(HspError::Invariant(format!("{a}*{b} leaves the subgroup")));
                }
            }
        }
        Ok(())
    }

    /// Subgroup of elements common to both.
    pub fn intersect(&self, other: &Subgroup) -> Subgroup {
        let elements: Vec<Elem> =
            self.elements.iter().copied().filter(|&x| other.contains(x)).collect();
        Subgroup { parent: self.parent.clone(), generators: elements.clone(), elements }
    }

    /// `g H g^-1`.
    pub fn conjugate(&self, g: Elem) -> Subgroup {
        let p = &self.parent;
        let gi = p.inv(g);
        let mut elements: Vec<Elem> =
            self.elements.iter().map(|&h| p.mul(p.mul(g, h), gi)).collect();
        elements.sort_unstable();
        let generators = self.generators.iter().map(|&h| p.mul(p.mul(g, h), gi)).collect();
        Subgroup { parent: p.clone(), elements, generators }
    }
}

/// Smallest subgroup containing `gens`, refusing to grow past `cap` elements.
pub fn subgroup_closure_capped(g: &GroupSpec, gens: &[Elem], cap: usize) -> Result<Subgroup> {
    for &x in gens {
        g.check(x)?;
    }
    let mut seen: HashSet<Elem> = HashSet::from([0]);
    let mut frontier = vec![0];
    while let Some(x) = frontier.pop() {
        for &s in gens {
            let y = g.mul(x, s);
            if seen.insert(y) {
                if seen.len() > cap {
                    return Err(HspError::Capacity { what: "subgroup closure".into(), size: seen.len(), cap });
                }
                frontier.push(y);
            }
        }
    }
    let mut elements: Vec<Elem> = seen.into_iter().collect();
    elements.sort_unstable();
    Ok(Subgroup { parent: g.clone(), elements, generators: gens.to_vec() })
}

pub fn subgroup_closure(g: &GroupSpec, gens: &[Elem]) -> Result<Subgroup> {
    subgroup_closure_capped(g, gens, DEFAULT_CAP)
}

/// Left-coset labels. Labels are assigned in increasing order of coset minima, so the label
/// of `g` is the rank of `min(gH)` among all coset minima.
pub fn coset_labels(g: &GroupSpec, h: &Subgroup) -> Result<Vec<usize>> {
    if h.parent() != g {
        return Err(HspError::Precondition("subgroup belongs to another group".into()));
    }
    enumerate_elements_capped(g, DEFAULT_CAP)?;
    let mut label = vec![usize::MAX; g.order()];
    let mut next = 0;
    for x in g.elements_iter() {
        if label[x] != usize::MAX {
            continue;
        }
        for &e in h.elements() {
            let y = g.mul(x, e);
            if label[y] != usize::MAX {
                return Err(HspError::Invariant("subgroup is not closed".into()));
            }
            label[y] = next;
        }
        next += 1;
    }
    Ok(label)
}

/// Minimal element of each left coset, indexed by label.
pub fn coset_representatives(labels: &[usize]) -> Vec<Elem> {
    let count = labels.iter().copied().max().map_or(0, |m| m + 1);
    let mut reps = vec![usize::MAX; count];
    for (x, &l) in labels.iter().enumerate() {
        if reps[l] == usize::MAX {
            reps[l] = x;
        }
    }
    reps
}

pub fn is_normal(g: &GroupSpec, h: &Subgroup) -> bool {
    g.elements_iter().all(|x| {
        let xi = g.inv(x);
        h.elements().iter().all(|&e| h.contains(g.mul(g.mul(x, e), xi)))
    })
}

/// Quotient by a normal subgroup as a table-backed group, together with the projection
/// `G -> G/N` given as a label per element.
pub fn quotient_group(g: &GroupSpec, n: &Subgroup) -> Result<(GroupSpec, Vec<usize>)> {
    if !is_normal(g, n) {
        return Err(HspError::Precondition("quotient needs a normal subgroup".into()));
    }
    let labels = coset_labels(g, n)?;
    let reps = coset_representatives(&labels);
    let k = reps.len();
    let mut mul = Vec::with_capacity(k * k);
    for &a in &reps {
        for &b in &reps {
            mul.push(labels[g.mul(a, b)] as u32);
        }
    }
    let table = CayleyTable::new(format!("{g}/{}", n.order()), k, mul)?;
    Ok((GroupSpec::table(table), labels))
}

/// Brute-force list of every subgroup, found by closing all subsets reachable through
/// adding one generator at a time. Only meant for tiny groups.
pub fn all_subgroups(g: &GroupSpec) -> Result<Vec<Subgroup>> {
    enumerate_elements_capped(g, 512)?;
    let mut found: Vec<Subgroup> = vec![Subgroup::trivial(g)];
    let mut seen: HashSet<Vec<Elem>> = HashSet::from([vec![0]]);
    let mut i = 0;
    while i < found.len() {
        let base = found[i].clone();
        for x in g.elements_iter() {
            if base.contains(x) {
                continue;
            }
            let mut gens = base.generators().to_vec();
            gens.push(x);
            let s = subgroup_closure(g, &gens)?;
            if seen.insert(s.elements().to_vec()) {
                found.push(s);
            }
        }
        i += 1;
    }
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closure_examples() {
        let d4 = GroupSpec::dihedral(4);
        assert_eq!(subgroup_closure(&d4, &[]).unwrap().elements(), &[0]);
        assert_eq!(subgroup_closure(&d4, &[1 + 4]).unwrap().elements(), &[0, 5]);
        let z12 = GroupSpec::cyclic(12);
        assert_eq!(subgroup_closure(&z12, &[4]).unwrap().elements(), &[0, 4, 8]);
    }

    #[test]
    fn coset_examples() {
        let d4 = GroupSpec::dihedral(4);
        let h1 = subgroup_closure(&d4, &[5]).unwrap();
        let l = coset_labels(&d4, &h1).unwrap();
        assert_eq!(l.iter().max(), Some(&3));
        assert!(!is_normal(&d4, &h1));
        let whole = Subgroup::whole(&d4).unwrap();
        assert!(coset_labels(&d4, &whole).unwrap().iter().all(|&x| x == 0));
        let triv = Subgroup::trivial(&d4);
        assert_eq!(coset_labels(&d4, &triv).unwrap(), (0..8).collect::<Vec<_>>());
    }

    #[test]
    fn quotient_examples() {
        let z12 = GroupSpec::cyclic(12);
        let h = subgroup_closure(&z12, &[4]).unwrap();
        let (q, proj) = quotient_group(&z12, &h).unwrap();
        assert_eq!(q.order(), 4);
        assert_eq!(q.element_order(proj[1]), 4);
        let d8 = GroupSpec::dihedral(8);
        let h2 = subgroup_closure(&d8, &[2]).unwrap();
        let (q, _) = quotient_group(&d8, &h2).unwrap();
        assert_eq!(q.order(), 4);
        // D_2 is the Klein group: every element squares to the identity
        assert!(q.elements_iter().all(|x| q.mul(x, x) == 0));
        let d4 = GroupSpec::dihedral(4);
        assert!(quotient_group(&d4, &subgroup_closure(&d4, &[5]).unwrap()).is_err());
    }
}
