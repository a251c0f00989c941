use std::collections::BTreeSet;

use group_core::*;
use proptest::prelude::*;

fn zoo() -> Vec<GroupSpec> {
    vec![
        GroupSpec::cyclic(1),
        GroupSpec::cyclic(7),
        GroupSpec::abelian(&[2, 2, 2]),
        GroupSpec::abelian(&[4, 6]),
        GroupSpec::dihedral(1),
        GroupSpec::dihedral(6),
        GroupSpec::dihedral(16),
        GroupSpec::dihedral(256),
        GroupSpec::generalized_dihedral(GroupSpec::abelian(&[2, 4])).unwrap(),
        GroupSpec::generalized_dihedral(GroupSpec::abelian(&[3, 5, 3])).unwrap(),
        GroupSpec::symmetric(4),
        GroupSpec::symmetric(5),
        GroupSpec::wreath_sym_z2(2),
        GroupSpec::wreath_sym_z2(3),
        GroupSpec::product(vec![GroupSpec::dihedral(3), GroupSpec::cyclic(4)]),
    ]
}

#[test]
fn axioms_exhaustive_small() {
    for g in zoo().into_iter().filter(|g| g.order() <= 64) {
        for a in g.elements_iter() {
            assert_eq!(g.mul(0, a), a);
            assert_eq!(g.mul(a, 0), a);
            assert_eq!(g.mul(a, g.inv(a)), 0, "{g}");
            assert_eq!(g.mul(g.inv(a), a), 0, "{g}");
            for b in g.elements_iter() {
                for c in g.elements_iter() {
                    assert_eq!(g.mul(g.mul(a, b), c), g.mul(a, g.mul(b, c)), "{g}");
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]
    #[test]
    fn axioms_random_large(idx in 0usize..15, a in 0usize..1_000_000, b in 0usize..1_000_000, c in 0usize..1_000_000) {
        let g = &zoo()[idx];
        let (a, b, c) = (a % g.order(), b % g.order(), c % g.order());
        prop_assert_eq!(g.mul(g.mul(a, b), c), g.mul(a, g.mul(b, c)));
        prop_assert_eq!(g.mul(a, g.inv(a)), 0);
    }

    #[test]
    fn encoding_bijective(idx in 0usize..15, a in 0usize..1_000_000) {
        let g = &zoo()[idx];
        let a = a % g.order();
        prop_assert_eq!(g.from_coords(&g.coords(a)).unwrap(), a);
    }
}

#[test]
fn dihedral_subgroups_are_complete() {
    for n in 1..=8 {
        let g = GroupSpec::dihedral(n);
        let brute: BTreeSet<Vec<Elem>> =
            all_subgroups(&g).unwrap().into_iter().map(|h| h.elements().to_vec()).collect();
        let listed: BTreeSet<Vec<Elem>> = dihedral_subgroups(n)
            .into_iter()
            .map(|h| h.materialize().unwrap().elements().to_vec())
            .collect();
        assert_eq!(brute, listed, "N = {n}");
        assert_eq!(listed.len(), divisors(n).iter().map(|r| 1 + r).sum::<usize>());
    }
}

#[test]
fn quotient_projection_is_homomorphism() {
    let g = GroupSpec::dihedral(12);
    for h in dihedral_subgroups(12) {
        let s = h.materialize().unwrap();
        if !is_normal(&g, &s) {
            continue;
        }
        let (q, proj) = quotient_group(&g, &s).unwrap();
        assert_eq!(q.order() * s.order(), g.order());
        for a in g.elements_iter() {
            for b in g.elements_iter() {
                assert_eq!(proj[g.mul(a, b)], q.mul(proj[a], proj[b]));
            }
        }
    }
}
