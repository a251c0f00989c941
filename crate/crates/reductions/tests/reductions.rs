use group_core::{perm, GroupSpec};
use num_bigint::BigInt;
use num_traits::Zero;
use rand::{rngs::StdRng, Rng, SeedableRng};
use reductions::*;

fn big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

fn random_perm(n: usize, rng: &mut StdRng) -> Vec<usize> {
    perm::unrank(n, rng.gen_range(0..perm::factorial(n)))
}

#[test]
fn automorphism_oracles_hide_aut() {
    let mut rng = StdRng::seed_from_u64(1);
    for n in 1..=4 {
        let pairs = n * (n - 1) / 2;
        for mask in 0..1u64 << pairs {
            let g = Graph::from_mask(n, mask);
            let f = graph_auto_oracle(&g).unwrap();
            assert_eq!(f.is_consistent(), Some(true), "n = {n}, mask = {mask}");
        }
    }
    let path = Graph::new(3, &[(0, 1), (1, 2)]).unwrap();
    let f = graph_auto_oracle(&path).unwrap();
    assert_eq!(f.coset_of(0), vec![0, perm::rank(&[2, 1, 0])]);
    let t = asymmetric_tree7();
    let relabeled = t.permute(&random_perm(7, &mut rng));
    assert_eq!(graph_auto_oracle(&relabeled).unwrap().coset_of(0), vec![0]);
}

#[test]
fn rigid_graph_classes() {
    for n in 2..=5 {
        assert!(rigid_graphs(n).unwrap().is_empty(), "n = {n}");
    }
    let six = rigid_graphs(6).unwrap();
    assert_eq!(six.len(), 8);
    assert!(six.iter().all(|g| g.is_connected() && g.is_rigid().unwrap()));
}

#[test]
fn wreath_oracle_subgroups() {
    let mut rng = StdRng::seed_from_u64(2);
    let six = rigid_graphs(6).unwrap();
    let g = &six[0];
    let f = wreath_union_oracle(g, g).unwrap();
    let h = f.hidden().unwrap();
    assert_eq!(h.order(), 2);
    let (a, b, c) = wreath_split(6, h.elements()[1]);
    assert_eq!((a.clone(), c), ((0..6).collect(), 1));
    assert_eq!(b, a);
    let w = random_perm(6, &mut rng);
    let g2 = g.permute(&w);
    let f = wreath_union_oracle(g, &g2).unwrap();
    let x = f.hidden().unwrap().elements()[1];
    assert_eq!(f.eval(x), f.eval(0));
    let (a, _, _) = wreath_split(6, x);
    assert_eq!(g2.permute(&a), *g);
    let f = wreath_union_oracle(&six[0], &six[1]).unwrap();
    assert_eq!(f.hidden().unwrap().order(), 1);
    // Coset constancy on random pairs of the group.
    let group = GroupSpec::wreath_sym_z2(6);
    for _ in 0..500 {
        let y = rng.gen_range(0..group.order());
        assert_eq!(f.eval(y), f.eval(group.mul(y, 0)));
        let z = rng.gen_range(0..group.order());
        assert_eq!(f.eval(y) == f.eval(z), y == z);
    }
    let path = Graph::new(3, &[(0, 1), (1, 2)]).unwrap();
    assert!(wreath_union_oracle(&path, &path).is_err());
}

#[test]
fn rigid_isomorphism_verdicts() {
    let mut rng = StdRng::seed_from_u64(3);
    let t = asymmetric_tree7();
    for solver in [IsoSolver::Exhaustive, IsoSolver::External] {
        let v = decide_rigid_iso(&t, &t, solver).unwrap();
        assert!(v.isomorphic);
        assert_eq!(v.witness, Some((0..7).collect()));
        let w = random_perm(7, &mut rng);
        let t2 = t.permute(&w);
        let v = decide_rigid_iso(&t, &t2, solver).unwrap();
        assert_eq!(v.witness, Some(w));
        // Joining the 1-leg to the 2-leg closes a triangle; still rigid, no longer a tree.
        let cyc = Graph::new(7, &[(0, 1), (0, 2), (1, 2), (2, 3), (0, 4), (4, 5), (5, 6)]).unwrap();
        assert!(cyc.is_rigid().unwrap());
        assert!(!decide_rigid_iso(&t, &cyc, solver).unwrap().isomorphic);
    }
    let six = rigid_graphs(6).unwrap();
    for (i, a) in six.iter().enumerate() {
        for (j, b) in six.iter().enumerate() {
            let b = b.permute(&random_perm(6, &mut rng));
            let e = decide_rigid_iso(a, &b, IsoSolver::Exhaustive).unwrap();
            let x = decide_rigid_iso(a, &b, IsoSolver::External).unwrap();
            assert_eq!((&e.isomorphic, &e.witness), (&x.isomorphic, &x.witness));
            assert_eq!(e.isomorphic, i == j);
        }
    }
}

#[test]
fn disconnected_inputs_use_complements() {
    let mut rng = StdRng::seed_from_u64(11);
    // K1 plus a rigid 6-vertex graph: disconnected, still rigid.
    let six = &rigid_graphs(6).unwrap()[0];
    let edges: Vec<(usize, usize)> = six.edges().iter().map(|&(u, v)| (u + 1, v + 1)).collect();
    let g = Graph::new(7, &edges).unwrap();
    assert!(!g.is_connected() && g.is_rigid().unwrap());
    let w = random_perm(7, &mut rng);
    let v = decide_rigid_iso(&g, &g.permute(&w), IsoSolver::Exhaustive).unwrap();
    assert!(v.complemented && v.isomorphic);
    assert_eq!(v.witness, Some(w));
    assert!(!decide_rigid_iso(&g, &asymmetric_tree7(), IsoSolver::External).unwrap().isomorphic);
}

#[test]
fn swap_signature_and_alternating_variant() {
    let mut rng = StdRng::seed_from_u64(4);
    for n in 1..=5 {
        for _ in 0..10 {
            let a = random_perm(n, &mut rng);
            assert_eq!(swap_signature(&a), if n % 2 == 0 { 1 } else { -1 });
        }
    }
    let t = asymmetric_tree7();
    let c = alternating_check(&t, &t.permute(&random_perm(7, &mut rng))).unwrap();
    assert!(c.padded && c.m == 8);
    assert!(c.sigma_even && c.sigma_is_automorphism && c.tau_is_automorphism);
    let g = &rigid_graphs(6).unwrap()[3];
    let c = alternating_check(g, &g.permute(&random_perm(6, &mut rng))).unwrap();
    assert!(!c.padded && c.sigma_even && c.sigma_is_automorphism);
}

#[test]
fn sat_oracle_is_a_homomorphism() {
    let mut rng = StdRng::seed_from_u64(5);
    let inst = SatInstance::new(6, vec![[0, 1, 2], [0, 3, 4], [2, 4, 5]]).unwrap();
    let o = sat_oracle(&inst).unwrap();
    let m = 64i64;
    for _ in 0..1000 {
        let x: Vec<i64> = (0..6).map(|_| rng.gen_range(0..m)).collect();
        let y: Vec<i64> = (0..6).map(|_| rng.gen_range(0..m)).collect();
        let s: Vec<i64> = x.iter().zip(&y).map(|(a, b)| a + b).collect();
        let lhs = o.hom.eval(&big(&s));
        let rhs = (o.hom.eval(&big(&x)) + o.hom.eval(&big(&y))) % BigInt::from(m);
        assert_eq!(lhs, rhs);
        let a = rng.gen_range(-50..50i64);
        let ax: Vec<i64> = x.iter().map(|v| a * v).collect();
        let rhs = (BigInt::from(a) * o.hom.eval(&big(&x))).modpow(&BigInt::from(1), &BigInt::from(m));
        assert_eq!(o.hom.eval(&big(&ax)), rhs);
    }
    // Solutions are exactly the assignments hitting the target.
    for mask in 0..64u64 {
        let x = sat::bits(6, mask);
        assert_eq!(inst.satisfies(&x), o.hom.eval_bits(&x) == o.target);
    }
}

#[test]
fn kernel_methods_agree() {
    let mut rng = StdRng::seed_from_u64(6);
    let toy = ModuleHom { modulus: BigInt::from(4), coeffs: big(&[1, 2]) };
    let a = extract_basis(&toy, &kernel_generators(&toy, KernelMethod::Snf, &mut rng).unwrap()).unwrap();
    let b = extract_basis(&toy, &kernel_generators(&toy, KernelMethod::Hsp, &mut rng).unwrap()).unwrap();
    assert_eq!(a, b);
    assert_eq!(a.vectors, vec![big(&[2, 1])]);
    let inst = SatInstance::new(3, vec![[0, 1, 2]]).unwrap();
    let ks = sat_kernel(&inst, KernelMethod::Snf, &mut rng).unwrap();
    let kh = sat_kernel(&inst, KernelMethod::Hsp, &mut rng).unwrap();
    assert_eq!(ks.basis, kh.basis);
    assert!(kh.generators.iter().all(|g| kh.oracle.hom.eval(g).is_zero()));
    let degenerate = ModuleHom { modulus: BigInt::from(4), coeffs: big(&[2, 2]) };
    let gens = kernel_generators(&degenerate, KernelMethod::Snf, &mut rng).unwrap();
    assert!(extract_basis(&degenerate, &gens).is_err());
}

#[test]
fn kernel_coset_matches_solutions() {
    let mut rng = StdRng::seed_from_u64(7);
    for (name, inst) in sat_corpus() {
        let k = sat_kernel(&inst, KernelMethod::Snf, &mut rng).unwrap();
        assert_eq!(k.oracle.hom.eval(&k.p), k.oracle.target, "{name}");
        let sols = inst.solutions().unwrap();
        assert!(sols.iter().all(|x| k.in_target_coset(x)), "{name}");
        assert_eq!(k.binary_coset_points(), sols, "{name}");
    }
}

#[test]
fn lattice_construction() {
    let mut rng = StdRng::seed_from_u64(8);
    for (name, inst) in sat_corpus() {
        let k = sat_kernel(&inst, KernelMethod::Snf, &mut rng).unwrap();
        let lat = gapcvp_build(&k).unwrap();
        assert!(!determinant(&lat.basis).is_zero(), "{name}");
        assert_eq!(&lat.epsilon * Q::from_integer(lat.r.clone()), Q::new(1.into(), 2.into()));
        let m = lat.modulus.clone();
        assert_eq!(lat.r, (&lat.m_b + 2u32).max(&m - 1u32));
        for x in inst.solutions().unwrap() {
            let u = forward_coefficients(&lat, k.basis.pivot, &x).unwrap();
            assert!(u.iter().all(|c| c.magnitude() <= lat.r.magnitude()), "{name}");
            assert!(inf_distance(&lat.point(&u), &lat.target) <= lat.bound, "{name}");
        }
    }
}

#[test]
fn corpus_reductions_agree() {
    let corpus = sat_corpus();
    assert!(corpus.len() >= 20);
    let mut rng = StdRng::seed_from_u64(9);
    let mut unsat = 0;
    for (name, inst) in corpus {
        let k = sat_kernel(&inst, KernelMethod::Snf, &mut rng).unwrap();
        let lat = gapcvp_build(&k).unwrap();
        let v = reduction_verify(&inst, &lat).unwrap();
        assert!(v.agree, "{name}: sat {} cvp {:?}", v.sat, v.cvp);
        assert!(v.top_dominates && v.points_satisfy, "{name}");
        assert_eq!(v.cvp_points.len(), v.sat_solutions, "{name}");
        unsat += usize::from(!v.sat);
    }
    assert_eq!(unsat, 2);
}

#[test]
fn two_disjoint_clauses() {
    let inst = parse_sat("c 1 2 3\nc 4 5 6\n").unwrap();
    assert!(inst.fresh_first());
    let k = sat_kernel(&inst, KernelMethod::Snf, &mut StdRng::seed_from_u64(10)).unwrap();
    let v = reduction_verify(&inst, &gapcvp_build(&k).unwrap()).unwrap();
    assert_eq!((v.sat, v.cvp), (true, Some(true)));
    assert_eq!(v.sat_solutions, 9);
}
