//! Subgroups `H_r = <(r,0)>` and `H_{r,d} = <(r,0), (d,1)>` of `D_N`.

use crate::error::Result;
use crate::group::{Elem, GroupSpec};
use crate::subgroup::{subgroup_closure, Subgroup};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DihedralSubgroup {
    pub n: usize,
    pub r: usize,
    pub d: Option<usize>,
}

impl DihedralSubgroup {
    pub fn rotations(n: usize, r: usize) -> Self {
        DihedralSubgroup { n, r, d: None }
    }

    pub fn reflections(n: usize, r: usize, d: usize) -> Self {
        DihedralSubgroup { n, r, d: Some(d) }
    }

    /// `<(d,1)>`, the case every dihedral algorithm reduces to.
    pub fn slope(n: usize, d: usize) -> Self {
        Self::reflections(n, n, d)
    }

    pub fn generators(&self) -> Vec<Elem> {
        let mut g = vec![self.r % self.n];
        if let Some(d) = self.d {
            g.push(d + self.n);
        }
        g
    }

    pub fn materialize(&self) -> Result<Subgroup> {
        subgroup_closure(&GroupSpec::dihedral(self.n), &self.generators())
    }

    pub fn order(&self) -> usize {
        match self.d {
            None => self.n / self.r,
            Some(_) => 2 * self.n / self.r,
        }
    }

    pub fn label(&self) -> String {
        match self.d {
            None => format!("H_{}", self.r),
            Some(d) => format!("H_{},{}", self.r, d),
        }
    }
}

pub fn divisors(n: usize) -> Vec<usize> {
    (1..=n).filter(|r| n % r == 0).collect()
}

/// Every subgroup of `D_N`: for each divisor `r`, `H_r` followed by `H_{r,d}` for `d < r`.
pub fn dihedral_subgroups(n: usize) -> Vec<DihedralSubgroup> {
    let mut out = Vec::new();
    for r in divisors(n) {
        out.push(DihedralSubgroup::rotations(n, r));
        for d in 0..r {
            out.push(DihedralSubgroup::reflections(n, r, d));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::subgroup::is_normal;

    #[test]
    fn counts() {
        assert_eq!(dihedral_subgroups(1).len(), 2);
        assert_eq!(dihedral_subgroups(4).len(), 10);
        assert_eq!(dihedral_subgroups(6).len(), 16);
    }

    #[test]
    fn sizes_and_normality() {
        for n in 1..=16 {
            let g = GroupSpec::dihedral(n);
            for h in dihedral_subgroups(n) {
                let s = h.materialize().unwrap();
                assert_eq!(s.order(), h.order());
                s.verify().unwrap();
                let expect = h.d.is_none() || h.r <= 2;
                assert_eq!(is_normal(&g, &s), expect, "{n} {}", h.label());
            }
        }
    }
}
