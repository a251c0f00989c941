use fourier::build_qft;
use group_core::*;
use rand::rngs::StdRng;
use rand::SeedableRng;
use rep_theory::*;
use sampling::*;

fn cases() -> Vec<(GroupSpec, Subgroup)> {
    let mut out = Vec::new();
    for n in [3, 4, 6, 8] {
        let g = GroupSpec::dihedral(n);
        for h in dihedral_subgroups(n) {
            out.push((g.clone(), h.materialize().unwrap()));
        }
    }
    let z = GroupSpec::abelian(&[2, 2, 2]);
    for h in all_subgroups(&z).unwrap() {
        out.push((z.clone(), h));
    }
    out
}

#[test]
fn analytic_matches_brute_force_and_rows_are_constant() {
    for (g, h) in cases() {
        let t = irreps_for(&g).unwrap();
        let f = build_qft(&t).unwrap();
        let o = oracle_from_subgroup(&g, &h).unwrap();
        let brute = brute_force_joint(&f, &o).unwrap();
        let joint = joint_fs_distribution(&t, &h).unwrap();
        assert!(brute.max_diff(&joint) < 1e-12, "{g} |H|={}", h.order());
        let rows = brute_force_rows(&f, &o).unwrap();
        for (&(r, i, j), &p) in &rows.outcomes {
            assert!((p - rows.get(&(r, 0, j))).abs() < 1e-12, "{g} row {i}");
        }
        assert!(rows.map(|l| (l.0, l.2)).max_diff(&strong_fs_distribution(&t, &h)) < 1e-12);
        assert!(rows.map(|l| l.0).max_diff(&weak_fs_distribution(&t, &h)) < 1e-12);
        assert!(weak_fs_distribution(&t, &h).is_valid());
    }
}

#[test]
fn d6_joint_against_simulation() {
    let g = GroupSpec::dihedral(6);
    let h = DihedralSubgroup::rotations(6, 2).materialize().unwrap();
    let t = dihedral_irreps(6);
    let f = build_qft(&t).unwrap();
    let o = oracle_from_subgroup(&g, &h).unwrap();
    let d = joint_fs_distribution(&t, &h).unwrap();
    assert!(d.max_diff(&brute_force_joint(&f, &o).unwrap()) < 1e-12);
    assert!((d.total() - 1.0).abs() < 1e-12);
}

#[test]
fn empirical_converges_to_analytic() {
    let mut rng = StdRng::seed_from_u64(2024);
    let picks = [(4, DihedralSubgroup::reflections(4, 4, 1)), (6, DihedralSubgroup::slope(6, 1)), (12, DihedralSubgroup::reflections(12, 3, 2))];
    for (n, hs) in picks {
        let g = GroupSpec::dihedral(n);
        let h = hs.materialize().unwrap();
        let t = dihedral_irreps(n);
        let f = build_qft(&t).unwrap();
        let o = oracle_from_subgroup(&g, &h).unwrap();
        let s = FourierSampler::new(&f, &o).unwrap();
        let draws: Vec<FsObservation> = (0..100_000).map(|_| s.draw(FsMode::Joint, &mut rng)).collect();
        let weak = Distribution::empirical(&draws.iter().map(|o| o.rho).collect::<Vec<_>>());
        let strong = Distribution::empirical(&draws.iter().map(|o| (o.rho, o.j.unwrap())).collect::<Vec<_>>());
        let joint = Distribution::empirical(
            &draws.iter().map(|o| (o.rho, o.i.unwrap(), o.j.unwrap(), o.value.unwrap())).collect::<Vec<_>>(),
        );
        assert!(weak.tv_distance(&weak_fs_distribution(&t, &h)) < 0.01);
        assert!(strong.tv_distance(&strong_fs_distribution(&t, &h)) < 0.01);
        assert!(joint.tv_distance(&joint_fs_distribution(&t, &h).unwrap()) < 0.02);
    }
}

#[test]
fn d4_h1_sample_fourier_tv() {
    let g = GroupSpec::dihedral(4);
    let t = dihedral_irreps(4);
    let f = build_qft(&t).unwrap();
    let h1 = subgroup_closure(&g, &[5]).unwrap();
    let o = oracle_from_subgroup(&g, &h1).unwrap();
    let mut rng = StdRng::seed_from_u64(11);
    let draws: Vec<usize> = (0..100_000).map(|_| sample_fourier(&f, &o, FsMode::Weak, &mut rng).unwrap().rho).collect();
    assert!(Distribution::empirical(&draws).tv_distance(&weak_fs_distribution(&t, &h1)) < 0.01);
}

#[test]
fn weak_distribution_is_basis_and_conjugacy_blind() {
    let mut rng = StdRng::seed_from_u64(5);
    use rand::Rng;
    for n in [5, 8, 9] {
        let g = GroupSpec::dihedral(n);
        let base = dihedral_irreps(n);
        let m = num_tau(n);
        let basis = DihedralBasis::new(
            n,
            (0..m).map(|_| rng.gen::<f64>()).collect(),
            (0..m).map(|_| rng.gen::<f64>() * std::f64::consts::TAU).collect(),
        )
        .unwrap();
        let rotated = dihedral_irreps_in_basis(n, &basis).unwrap();
        for hs in dihedral_subgroups(n) {
            let h = hs.materialize().unwrap();
            let w = weak_fs_distribution(&base, &h);
            assert!(w.max_diff(&weak_fs_distribution(&rotated, &h)) < 1e-12);
            for x in g.elements_iter() {
                assert!(w.max_diff(&weak_fs_distribution(&base, &h.conjugate(x))) < 1e-12);
            }
        }
    }
}

#[test]
fn coset_sampling_is_uniform_over_cosets() {
    let g = GroupSpec::dihedral(6);
    let h = DihedralSubgroup::rotations(6, 3).materialize().unwrap();
    let o = oracle_from_subgroup(&g, &h).unwrap();
    let mut rng = StdRng::seed_from_u64(17);
    let k = h.index();
    let mut counts = vec![0usize; k];
    let trials = 10_000;
    for _ in 0..trials {
        let (state, y) = sample_coset(&o, &mut rng);
        for (x, a) in state.amplitudes.iter().enumerate() {
            if a.norm() > 0.0 {
                assert_eq!(o.eval(x), y);
            }
        }
        counts[y as usize] += 1;
    }
    let e = trials as f64 / k as f64;
    let sigma = (trials as f64 * (1.0 / k as f64) * (1.0 - 1.0 / k as f64)).sqrt();
    for c in counts {
        assert!((c as f64 - e).abs() < 4.0 * sigma);
    }
}

#[test]
fn size_probe_detects_index_two() {
    let g = GroupSpec::dihedral(8);
    let h = DihedralSubgroup::rotations(8, 1).materialize().unwrap();
    let o = oracle_from_subgroup(&g, &h).unwrap();
    let mut rng = StdRng::seed_from_u64(23);
    let proper = (0..1000).filter(|_| size_probe(&o, 20, &mut rng).unwrap() == SizeVerdict::Proper).count();
    assert_eq!(proper, 1000);
}

#[test]
fn normal_solver_recovers_normal_subgroups() {
    let mut rng = StdRng::seed_from_u64(31);
    let mut groups: Vec<GroupSpec> = (1..=12).map(GroupSpec::dihedral).collect();
    groups.push(GroupSpec::cyclic(12));
    groups.push(GroupSpec::abelian(&[2, 2, 2]));
    for g in groups {
        let t = irreps_for(&g).unwrap();
        let f = build_qft(&t).unwrap();
        for h in all_subgroups(&g).unwrap().into_iter().filter(|h| is_normal(&g, h)) {
            let o = oracle_from_subgroup(&g, &h).unwrap();
            let s = FourierSampler::new(&f, &o).unwrap();
            let ok = (0..100)
                .filter(|_| solve_normal_with(&s, &f, 4.0, &mut rng).unwrap().elements() == h.elements())
                .count();
            assert!(ok >= 99, "{g} |H|={} ok={ok}", h.order());
        }
    }
}
