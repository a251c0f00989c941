//! Closed-form weak, strong and joint Fourier-sampling distributions.

use group_core::{coset_labels, coset_representatives, Elem, Result, Subgroup};
use rep_theory::{IrrepTable, Mat, C64};

use crate::dist::Distribution;

/// Strong-sampling label: irrep index and column `j` (0-based).
pub type StrongLabel = (usize, usize);
/// Joint label: irrep, row, column, oracle value of the coset.
pub type JointLabel = (usize, usize, usize, u64);

/// `rho(H) = (1/sqrt|H|) sum_h rho(h)`.
pub fn rho_of(table: &IrrepTable, rho: usize, elems: &[Elem]) -> Mat {
    let s = table.irreps[rho].sum_over(elems);
    s.scale(C64::new(1.0 / (elems.len() as f64).sqrt(), 0.0))
}

/// `P(rho) = (d_rho/|G|) sqrt|H| tr rho(H)`.
pub fn weak_fs_distribution(table: &IrrepTable, h: &Subgroup) -> Distribution<usize> {
    let n = table.group.order() as f64;
    let sq = (h.order() as f64).sqrt();
    Distribution::from_pairs(table.irreps.iter().enumerate().map(|(r, rep)| {
        let tr = rho_of(table, r, h.elements()).trace().re;
        (r, rep.dim as f64 / n * sq * tr)
    }))
}

/// `P(rho, ., j) = (d_rho/|G|) ||rho(H)_j||^2` with `rho(H)_j` the `j`-th column.
pub fn strong_fs_distribution(table: &IrrepTable, h: &Subgroup) -> Distribution<StrongLabel> {
    let n = table.group.order() as f64;
    let mut d = Distribution::new();
    for (r, rep) in table.irreps.iter().enumerate() {
        let m = rho_of(table, r, h.elements());
        for j in 0..rep.dim {
            d.add((r, j), rep.dim as f64 / n * m.column_norm_sqr(j));
        }
    }
    d
}

/// `P(rho, i, j, f(x_k)) = d_rho |H| / |G|^2 |rho(x_k H)_ij|^2` with `x_k` the minimal
/// element of each coset and `f(x_k)` its canonical label.
pub fn joint_fs_distribution(table: &IrrepTable, h: &Subgroup) -> Result<Distribution<JointLabel>> {
    let g = &table.group;
    let n = g.order() as f64;
    let labels = coset_labels(g, h)?;
    let reps = coset_representatives(&labels);
    let mut d = Distribution::new();
    for (r, rep) in table.irreps.iter().enumerate() {
        let rh = rho_of(table, r, h.elements());
        let w = rep.dim as f64 * h.order() as f64 / (n * n);
        for (k, &x) in reps.iter().enumerate() {
            let m = &rep.matrices[x] * &rh;
            for i in 0..rep.dim {
                for j in 0..rep.dim {
                    d.add((r, i, j, k as u64), w * m[(i, j)].norm_sqr());
                }
            }
        }
    }
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use group_core::{subgroup_closure, GroupSpec};
    use rep_theory::dihedral_irreps;

    #[test]
    fn d4_figures() {
        let g = GroupSpec::dihedral(4);
        let t = dihedral_irreps(4);
        let h1 = subgroup_closure(&g, &[5]).unwrap();
        let h2 = subgroup_closure(&g, &[2]).unwrap();
        let w1 = weak_fs_distribution(&t, &h1);
        let want1 = [0.25, 0.0, 0.0, 0.25, 0.5];
        for (r, &p) in want1.iter().enumerate() {
            assert!((w1.get(&r) - p).abs() < 1e-12);
        }
        let w2 = weak_fs_distribution(&t, &h2);
        let want2 = [0.25, 0.25, 0.25, 0.25, 0.0];
        for (r, &p) in want2.iter().enumerate() {
            assert!((w2.get(&r) - p).abs() < 1e-12);
        }
        let s1 = strong_fs_distribution(&t, &h1);
        assert!((s1.get(&(4, 0)) - 0.25).abs() < 1e-12 && (s1.get(&(4, 1)) - 0.25).abs() < 1e-12);
        let s2 = strong_fs_distribution(&t, &h2);
        assert!(s2.get(&(4, 0)).abs() < 1e-12 && s2.get(&(4, 1)).abs() < 1e-12);
        assert!(s1.map(|l| l.0).max_diff(&w1) < 1e-12);
        let j1 = joint_fs_distribution(&t, &h1).unwrap();
        assert!(j1.map(|l| l.0).max_diff(&w1) < 1e-12);
        assert!(j1.map(|l| (l.0, l.2)).max_diff(&s1) < 1e-12);
    }
}
