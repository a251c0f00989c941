use group_core::{abelian_types, GroupSpec};
use rep_theory::*;

#[test]
fn abelian_tables_up_to_64_validate() {
    for n in 1..=64 {
        for t in abelian_types(n) {
            let g = GroupSpec::abelian(&t);
            let r = validate_table(&abelian_irreps(&g).unwrap());
            assert!(r.max() < 1e-9, "{g}: {r:?}");
        }
    }
}

#[test]
fn dihedral_tables_validate() {
    for n in 1..=32 {
        let r = validate_table(&dihedral_irreps(n));
        assert!(r.max() < 1e-9, "N = {n}: {r:?}");
    }
}

#[test]
fn dihedral_one_dim_reps_restrict_to_rotation_characters() {
    for n in 1..=16 {
        let t = dihedral_irreps(n);
        let zn = abelian_irreps(&GroupSpec::cyclic(n)).unwrap();
        for rep in t.irreps.iter().filter(|r| r.dim == 1) {
            // on rotations a 1-dim irrep is a character of Z_N, either trivial or of order 2
            let matched = zn.irreps.iter().any(|chi| {
                (0..n).all(|a| (chi.character(a) - rep.character(a)).norm() < 1e-12)
            });
            assert!(matched, "N = {n}, {}", rep.label);
            // and reflections multiply by a constant sign
            let s = rep.character(n) / rep.character(0);
            assert!((s.norm() - 1.0).abs() < 1e-12 && s.im.abs() < 1e-12);
            for a in 0..n {
                assert!((rep.character(a + n) - s * rep.character(a)).norm() < 1e-12);
            }
        }
    }
}

#[test]
fn change_basis_preserves_characters() {
    let t = dihedral_irreps(7);
    let u = unitary2(0.4, 1.3, -0.2, 2.2);
    for rep in t.irreps.iter().filter(|r| r.dim == 2) {
        let r2 = change_basis(rep, &u).unwrap();
        for g in 0..14 {
            assert!((r2.character(g) - rep.character(g)).norm() < 1e-12);
            assert!(r2.at(g).unitarity_residual() < 1e-12);
        }
    }
    let id = change_basis(&t.irreps[2], &Mat::identity(2)).unwrap();
    assert!(id.at(3).max_diff(t.irreps[2].at(3)) < 1e-15);
    assert!(change_basis(&t.irreps[2], &Mat::zeros(2, 2)).is_err());
}

#[test]
fn hadamard_basis_on_d4() {
    let t = dihedral_irreps(4);
    let h = DihedralBasis::hadamard(4).u(1);
    let rho = change_basis(&t.irreps[4], &h).unwrap();
    let m = rho.at(1 + 4);
    let expect = &(&h * t.irreps[4].at(5)) * &h;
    assert!(m.max_diff(&expect) < 1e-15);
    // tau(1,1) = antidiag(-i, i) and H tau(1,1) H = [[0, i], [-i, 0]] has a zero diagonal
    assert!(m[(0, 0)].norm() < 1e-15 && m[(1, 1)].norm() < 1e-15);
}

#[test]
fn unitary2_closure_under_products() {
    let params = [(0.3, 1.0, 2.0, -0.5), (1.2, -0.7, 0.4, 3.0), (0.0, 0.2, 0.9, 1.0), (std::f64::consts::FRAC_PI_2, 0.0, 0.0, 0.0)];
    for a in params {
        for b in params {
            let w = &unitary2(a.0, a.1, a.2, a.3) * &unitary2(b.0, b.1, b.2, b.3);
            let (t, al, be, ga) = fit_unitary2(&w);
            assert!(unitary2(t, al, be, ga).max_diff(&w) < 1e-9, "{a:?} {b:?}");
        }
    }
}
