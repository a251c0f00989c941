use std::collections::HashSet;

use abelian_solver::*;
use group_core::{abelian_types, all_subgroups, subgroup_closure, GroupSpec, Subgroup};
use num_bigint::BigInt;
use rand::{rngs::StdRng, Rng, SeedableRng};
use rep_theory::abelian_irreps;
use sampling::{oracle_from_subgroup, weak_fs_distribution, HidingOracle};

fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

#[test]
fn hperp_matches_weak_sampling_and_duality() {
    for n in [4, 6, 8, 12, 16] {
        for t in abelian_types(n) {
            let g = GroupSpec::abelian(&t);
            let dec = AbelianDecomposition::standard(&g).unwrap();
            let table = abelian_irreps(&g).unwrap();
            for h in all_subgroups(&g).unwrap() {
                let sampler = HperpSampler::new(&g, &dec, &oracle_from_subgroup(&g, &h).unwrap()).unwrap();
                let hperp: HashSet<usize> = sampler.hperp().iter().map(|c| dec.embed(&g, c)).collect();
                assert_eq!(hperp.len() * h.order(), g.order());
                let weak = weak_fs_distribution(&table, &h);
                for rho in 0..g.order() {
                    let expect = if hperp.contains(&rho) { 1.0 / hperp.len() as f64 } else { 0.0 };
                    assert!((weak.get(&rho) - expect).abs() < 1e-12, "{t:?} rho {rho}");
                }
                // (H^perp)^perp = H
                let back: Vec<usize> = dec
                    .all_coords()
                    .into_iter()
                    .filter(|x| sampler.hperp().iter().all(|c| pairing(&dec.orders, c, x) == 0))
                    .map(|x| dec.embed(&g, &x))
                    .collect();
                let mut back = back;
                back.sort();
                assert_eq!(back, h.elements());
            }
        }
    }
}

#[test]
fn hperp_examples_and_uniformity() {
    let g = GroupSpec::abelian(&[2, 2]);
    let dec = AbelianDecomposition::standard(&g).unwrap();
    let h = Subgroup::from_elements(&g, vec![0, 3]).unwrap();
    let s = HperpSampler::new(&g, &dec, &oracle_from_subgroup(&g, &h).unwrap()).unwrap();
    assert_eq!(s.hperp(), &[vec![0, 0], vec![1, 1]]);
    let mut r = rng(1);
    let counts = (0..4000).fold([0usize; 2], |mut c, _| {
        c[s.draw(&mut r).coords[0]] += 1;
        c
    });
    assert!((counts[0] as f64 - 2000.0).abs() < 4.0 * 1000f64.sqrt());
    let whole = Subgroup::whole(&g).unwrap();
    let s = HperpSampler::new(&g, &dec, &oracle_from_subgroup(&g, &whole).unwrap()).unwrap();
    assert_eq!(s.hperp(), &[vec![0, 0]]);
    let triv = Subgroup::trivial(&g);
    assert_eq!(HperpSampler::new(&g, &dec, &oracle_from_subgroup(&g, &triv).unwrap()).unwrap().hperp().len(), 4);
}

#[test]
fn snf_random_matrices() {
    let mut r = rng(2);
    for trial in 0..60 {
        let m = r.gen_range(1..=16);
        let n = r.gen_range(1..=16);
        let bound = if trial % 2 == 0 { 1_000_000 } else { 5 };
        let a: IMat = (0..m).map(|_| (0..n).map(|_| BigInt::from(r.gen_range(-bound..=bound))).collect()).collect();
        let s = smith_normal_form(&a);
        assert!(s.verify(&a), "trial {trial}");
    }
    // rank-deficient input
    let a: IMat = snf::from_i64(&[vec![1, 2, 3], vec![2, 4, 6], vec![0, 0, 0]]);
    let s = smith_normal_form(&a);
    assert!(s.verify(&a));
    assert_eq!(s.rank(), 1);
}

fn check_solver_rate(g: &GroupSpec, runs: usize, seed: u64) {
    let dec = AbelianDecomposition::standard(g).unwrap();
    let mut r = rng(seed);
    for h in all_subgroups(g).unwrap() {
        let oracle = oracle_from_subgroup(g, &h).unwrap();
        let sampler = HperpSampler::new(g, &dec, &oracle).unwrap();
        let trials = default_trials(g.order());
        let ok = (0..runs)
            .filter(|_| solve_with(g, &dec, &oracle, &sampler, trials, &mut r).unwrap().elements() == h.elements())
            .count();
        // failure bound 2^-10 per run
        assert!(ok + 1 >= runs, "{g}: {ok}/{runs} for |H| = {}", h.order());
    }
}

#[test]
fn solve_abelian_success_rate() {
    check_solver_rate(&GroupSpec::cyclic(12), 200, 3);
    check_solver_rate(&GroupSpec::abelian(&[2, 2, 2]), 200, 4);
    check_solver_rate(&GroupSpec::abelian(&[2, 4]), 200, 5);
    check_solver_rate(&GroupSpec::abelian(&[3, 3]), 200, 6);
}

#[test]
fn solve_abelian_simon_group() {
    let g = GroupSpec::abelian(&[2; 6]);
    let dec = AbelianDecomposition::standard(&g).unwrap();
    let mut r = rng(7);
    for _ in 0..20 {
        let s = r.gen_range(1..64);
        let f = simon_oracle(s as u64);
        let oracle = HidingOracle::from_fn(g.clone(), move |x| f(x as u64));
        let h = solve_abelian(&g, &dec, &oracle, None, &mut r).unwrap();
        assert_eq!(h.elements(), &[0, s]);
    }
}

#[test]
fn simon_rate() {
    let mut r = rng(8);
    let mut ok = 0;
    for _ in 0..100 {
        let s = r.gen_range(0..64u64);
        if simon_solve(6, &simon_oracle(s), &mut r).map(|x| x.0) == Ok(s) {
            ok += 1;
        }
    }
    assert!(ok >= 99, "{ok}/100");
}

#[test]
fn shor_rates() {
    let mut r = rng(9);
    for (n0, factors) in [(15u64, [3u64, 5]), (21, [3, 7])] {
        let ok = (0..100)
            .filter(|_| shor_factor(n0, &mut r).map_or(false, |rep| factors.contains(&rep.factor)))
            .count();
        assert!(ok >= 99, "N0 = {n0}: {ok}/100");
    }
    assert!(shor_factor(9, &mut r).is_err());
    assert!(shor_factor(13, &mut r).is_err());
    for a in [2u64, 4, 5, 8, 10, 11, 13, 16, 17, 19, 20] {
        let order = (1..21).find(|&k| mod_pow(a, k, 21) == 1).unwrap();
        assert_eq!(shor_period(a, 21, &mut r).unwrap(), order);
        assert_eq!(shor_period_statevector(a, 21, &mut r).unwrap().0, order);
    }
}

#[test]
fn dlog_rate() {
    let mut r = rng(10);
    let primes: Vec<u64> = (3..=101).filter(|&p| is_prime(p)).collect();
    for _ in 0..100 {
        let p = primes[r.gen_range(0..primes.len())];
        let g = (2..p).find(|&g| is_generator(p, g)).unwrap();
        let x = r.gen_range(1..p);
        let y = discrete_log(p, g, x, &mut r).unwrap().y;
        assert_eq!(mod_pow(g, y, p), x);
    }
}

#[test]
fn decomposition_matches_structure() {
    let mut r = rng(11);
    for n in [1, 2, 6, 8, 12, 16, 36, 64] {
        for t in abelian_types(n) {
            let g = GroupSpec::abelian(&t);
            let d = decompose_abelian(&g, &mut r).unwrap();
            d.verify(&g).unwrap();
            assert!(is_invariant_form(&d.orders), "{t:?} -> {:?}", d.orders);
        }
    }
}

#[test]
fn cyclic_variant_rate() {
    let mut r = rng(12);
    let n = 1u64 << 10;
    let mut ok = 0;
    for _ in 0..100 {
        let d = 1u64 << r.gen_range(0..=10);
        let rep = cyclic_variant(n, &move |x| x % d, 4.0, &mut r).unwrap();
        assert!(rep.trace.iter().all(|a| d % a == 0));
        ok += usize::from(rep.d == d);
    }
    assert!(ok >= 99, "{ok}/100");
}

#[test]
fn abelian_variant_rate() {
    let mut r = rng(13);
    let z24 = GroupSpec::abelian(&[2; 4]);
    let span = |v: &[usize]| subgroup_closure(&z24, v).unwrap();
    let cases = [(GroupSpec::cyclic(12), vec![4]), (GroupSpec::cyclic(12), vec![0]), (z24.clone(), vec![3, 12])];
    for (g, gens) in cases {
        let h = if g == z24 { span(&gens) } else { subgroup_closure(&g, &gens).unwrap() };
        let dec = AbelianDecomposition::standard(&g).unwrap();
        let oracle = oracle_from_subgroup(&g, &h).unwrap();
        let mut ok = 0;
        for _ in 0..100 {
            let rep = abelian_variant(&g, &dec, &oracle, &mut r).unwrap();
            for st in &rep.trace {
                let gk = subgroup_closure(&g, &st.basis.generators).unwrap();
                assert!(h.elements().iter().all(|&x| gk.contains(x)));
            }
            let cyclics: Vec<Subgroup> =
                rep.basis.generators.iter().map(|&u| subgroup_closure(&g, &[u]).unwrap()).collect();
            for i in 0..cyclics.len() {
                for j in i + 1..cyclics.len() {
                    assert_eq!(cyclics[i].intersect(&cyclics[j]).order(), 1);
                }
            }
            ok += usize::from(rep.hidden.elements() == h.elements() && rep.basis.order() == h.order());
        }
        assert!(ok >= 99);
    }
    // Z_2^4 with H = span{(1,1,0,0),(0,0,1,1)}: two order-2 generators
    let h = span(&[3, 12]);
    let dec = AbelianDecomposition::standard(&z24).unwrap();
    let rep = abelian_variant(&z24, &dec, &oracle_from_subgroup(&z24, &h).unwrap(), &mut r).unwrap();
    assert_eq!(rep.basis.orders, vec![2, 2]);
}
