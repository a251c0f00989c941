use fourier::*;
use group_core::{abelian_types, GroupSpec};
use rep_theory::{abelian_irreps, dihedral_irreps, dihedral_irreps_in_basis, DihedralBasis, C64};

#[test]
fn transforms_are_unitary() {
    for n in 1..=32 {
        for t in abelian_types(n) {
            let f = build_qft(&abelian_irreps(&GroupSpec::abelian(&t)).unwrap()).unwrap();
            assert!(f.unitarity_residual() < 1e-9, "{t:?}");
        }
        for basis in [DihedralBasis::identity(n), DihedralBasis::hadamard(n), DihedralBasis::uniform(n, 0.3, 1.1).unwrap()] {
            let f = build_qft(&dihedral_irreps_in_basis(n, &basis).unwrap()).unwrap();
            assert!(f.unitarity_residual() < 1e-9, "D_{n}");
        }
    }
}

#[test]
fn uniform_state_maps_to_trivial_irrep() {
    for g in [GroupSpec::dihedral(6), GroupSpec::abelian(&[2, 4])] {
        let t = rep_theory::irreps_for(&g).unwrap();
        let f = build_qft(&t).unwrap();
        let out = apply_qft(&f, &StateVector::uniform(g.order())).unwrap();
        assert!((out.amplitudes[0] - C64::new(1.0, 0.0)).norm() < 1e-12);
        assert!((out.norm_sqr() - 1.0).abs() < 1e-12);
    }
}

#[test]
fn inputs_are_checked() {
    let f = build_qft(&dihedral_irreps(3)).unwrap();
    assert!(apply_qft(&f, &StateVector::uniform(5)).is_err());
    assert!(apply_qft(&f, &StateVector::new(vec![C64::new(1.0, 0.0); 6])).is_err());
    let mut t = dihedral_irreps(4);
    t.irreps.pop();
    assert!(build_qft(&t).is_err());
    assert_eq!(prep_success_probability(6), 0.75);
    assert_eq!(prep_success_probability(8), 1.0);
}
