use std::f64::consts::PI;

use dihedral_lab::analytic::{PSI2, PSI3};
use dihedral_lab::superposition::{measure_classes, parity_states, perturbed_table, WindowDecision};
use dihedral_lab::*;
use fourier::build_qft;
use group_core::{dihedral_subgroups, DihedralSubgroup, GroupSpec};
use rand::{rngs::StdRng, Rng, SeedableRng};
use rep_theory::{dihedral_irreps_in_basis, num_tau, DihedralBasis};
use sampling::{brute_force_rows, oracle_from_subgroup, weak_fs_distribution, Distribution, StrongLabel};

fn random_basis(n: usize, rng: &mut StdRng) -> DihedralBasis {
    let m = num_tau(n);
    DihedralBasis::new(n, (0..m).map(|_| rng.gen()).collect(), (0..m).map(|_| rng.gen::<f64>() * 2.0 * PI).collect())
        .unwrap()
}

fn pipeline_strong(n: usize, h: &DihedralSubgroup, basis: &DihedralBasis) -> Distribution<StrongLabel> {
    let table = dihedral_irreps_in_basis(n, basis).unwrap();
    let qft = build_qft(&table).unwrap();
    let g = GroupSpec::dihedral(n);
    let orc = oracle_from_subgroup(&g, &h.materialize().unwrap()).unwrap();
    brute_force_rows(&qft, &orc).unwrap().map(|l| (l.0, l.2))
}

#[test]
fn closed_forms_match_statevector_pipeline() {
    let mut rng = StdRng::seed_from_u64(11);
    for n in 1..=16 {
        for basis in [DihedralBasis::identity(n), DihedralBasis::hadamard(n), random_basis(n, &mut rng)] {
            for h in dihedral_subgroups(n) {
                let a = dihedral_analytic(n, &h, &basis).unwrap();
                let b = pipeline_strong(n, &h, &basis);
                assert!(a.strong.max_diff(&b) < 1e-9, "N = {n}, {}: {}", h.label(), a.strong.max_diff(&b));
                assert!(a.weak.max_diff(&b.map(|l| l.0)) < 1e-9);
            }
        }
    }
}

#[test]
fn weak_sampling_is_blind_to_the_slope() {
    for n in (1..=31).step_by(2) {
        let table = rep_theory::dihedral_irreps(n);
        let g = GroupSpec::dihedral(n);
        let base = dihedral_analytic(n, &DihedralSubgroup::slope(n, 0), &DihedralBasis::identity(n)).unwrap().weak;
        let bf0 = weak_fs_distribution(&table, &DihedralSubgroup::slope(n, 0).materialize().unwrap());
        for d in 1..n {
            let a = dihedral_analytic(n, &DihedralSubgroup::slope(n, d), &DihedralBasis::identity(n)).unwrap().weak;
            assert_eq!(a, base);
            let bf = weak_fs_distribution(&table, &DihedralSubgroup::slope(n, d).materialize().unwrap());
            assert!(bf.max_diff(&bf0) < 1e-12);
        }
        let _ = g;
    }
    for n in (2..=32).step_by(2) {
        let base = dihedral_analytic(n, &DihedralSubgroup::slope(n, 0), &DihedralBasis::identity(n)).unwrap().weak;
        for d in 1..n {
            let a = dihedral_analytic(n, &DihedralSubgroup::slope(n, d), &DihedralBasis::identity(n)).unwrap().weak;
            let mut moved = 0.0;
            for (rho, p) in &a.outcomes {
                if *rho == PSI2 || *rho == PSI3 {
                    moved += (p - base.get(rho)).abs();
                } else {
                    assert_eq!(*p, base.get(rho));
                }
            }
            assert!(moved == 0.0 || (moved - 2.0 / n as f64).abs() < 1e-15);
        }
    }
}

#[test]
fn strong_hadamard_sampling_reproduces_eh() {
    let mut rng = StdRng::seed_from_u64(3);
    for n in 1..=32 {
        for d in 0..n {
            let a = dihedral_analytic(n, &DihedralSubgroup::slope(n, d), &DihedralBasis::hadamard(n)).unwrap();
            let mapped = strong_to_eh_distribution(n, &a.strong);
            let eh = eh_probabilities(n, d);
            for k in 0..n {
                for j in 0..2 {
                    assert!((mapped[k][j] - eh[k][j]).abs() < 1e-12, "N = {n}, d = {d}, k = {k}");
                }
            }
        }
    }
    let obs = sampling::FsObservation { rho: PSI3, i: None, j: Some(0), value: None };
    assert_eq!(strong_to_eh(8, &obs, &mut rng).unwrap(), EhSample { k: 4, j: 1 });
    let obs = sampling::FsObservation { rho: 0, i: None, j: Some(0), value: None };
    assert_eq!(strong_to_eh(8, &obs, &mut rng).unwrap(), EhSample { k: 0, j: 0 });
}

#[test]
fn dcp_simulates_strong_sampling() {
    let mut rng = StdRng::seed_from_u64(4);
    for n in 1..=32 {
        for basis in [DihedralBasis::identity(n), random_basis(n, &mut rng)] {
            for d in 0..n {
                let a = dihedral_analytic(n, &DihedralSubgroup::slope(n, d), &basis).unwrap();
                let b = dcp_strong_distribution(n, d, &basis);
                assert!(a.strong.max_diff(&b) < 1e-12, "N = {n}, d = {d}");
            }
        }
    }
    // sampled version against the exact law
    let (n, d) = (8, 3);
    let basis = random_basis(n, &mut rng);
    let mut src = DcpSource::new(n, d, None).unwrap();
    let trials = 20_000;
    let samples: Vec<StrongLabel> =
        (0..trials).map(|_| dcp_to_strong(&src.draw(&mut rng), &basis, &mut rng).unwrap()).map(|o| (o.rho, o.j.unwrap())).collect();
    let emp = Distribution::empirical(&samples);
    let exact = dcp_strong_distribution(n, d, &basis);
    for (l, &p) in &exact.outcomes {
        let sigma = (p * (1.0 - p) / trials as f64).sqrt();
        assert!((emp.get(l) - p).abs() <= 4.0 * sigma + 1e-12, "{l:?}: {} vs {p}", emp.get(l));
    }
}

#[test]
fn quotient_equivalence() {
    let mut rng = StdRng::seed_from_u64(5);
    for n in 1..=24 {
        let basis = random_basis(n, &mut rng);
        for h in dihedral_subgroups(n) {
            let big = dihedral_analytic(n, &h, &basis).unwrap().strong;
            let rb = restrict_basis(&basis, h.r).unwrap();
            let small_h = match h.d {
                Some(d) => DihedralSubgroup::slope(h.r, d),
                None => DihedralSubgroup::rotations(h.r, h.r),
            };
            let small = dihedral_analytic(h.r, &small_h, &rb).unwrap().strong;
            let mapped = small.map(|l| (quotient_label(n, h.r, l.0), l.1));
            for (l, &p) in &big.outcomes {
                assert!((p - mapped.get(l)).abs() < 1e-12, "N = {n}, {} at {l:?}", h.label());
            }
            for (l, &p) in &mapped.outcomes {
                assert!((p - big.get(l)).abs() < 1e-12);
            }
        }
    }
}

#[test]
fn eh_table_and_statevector_agree() {
    for n in 1..=64 {
        for d in 0..n {
            let a = eh_probabilities(n, d);
            let b = eh_statevector(n, d);
            let total: f64 = a.iter().map(|r| r[0] + r[1]).sum();
            assert!((total - 1.0).abs() < 1e-12);
            for k in 0..n {
                assert!((a[k][0] - b[k][0]).abs() < 1e-12 && (a[k][1] - b[k][1]).abs() < 1e-12);
            }
        }
    }
}

#[test]
fn eh_solver_recovers_slopes() {
    let mut rng = StdRng::seed_from_u64(6);
    let ok = (0..100).filter(|_| eh_solve(&slope_oracle(16, 5), None, &mut rng).unwrap().d == Some(5)).count();
    assert!(ok >= 90, "{ok}/100");
    let mut ok = 0;
    for _ in 0..100 {
        let n = rng.gen_range(2..=64);
        let d = rng.gen_range(0..n);
        let r = eh_solve(&slope_oracle(n, d), None, &mut rng).unwrap();
        ok += usize::from(r.d == Some(d));
    }
    assert!(ok >= 90, "{ok}/100");
}

#[test]
fn dcp_statistics() {
    let mut rng = StdRng::seed_from_u64(7);
    let mut src = DcpSource::new(1 << 20, 12345, Some(1.0)).unwrap();
    let draws = 100_000;
    let bad = (0..draws).filter(|_| src.draw(&mut rng).is_corrupted()).count() as f64;
    let p = 1.0 / 20.0;
    let sigma = (draws as f64 * p * (1.0 - p)).sqrt();
    assert!((bad - draws as f64 * p).abs() < 4.0 * sigma);
    let mut clean = DcpSource::new(64, 3, None).unwrap();
    assert!((0..1000).all(|_| !clean.draw(&mut rng).is_corrupted()));

    let chi2 = |counts: &[usize], total: usize| -> f64 {
        let e = total as f64 / counts.len() as f64;
        counts.iter().map(|&c| (c as f64 - e).powi(2) / e).sum()
    };
    let mut counts = vec![0; 64];
    for _ in 0..64_000 {
        counts[clean.draw(&mut rng).x()] += 1;
    }
    // 63 degrees of freedom: mean 63, sd ~11.2
    assert!(chi2(&counts, 64_000) < 63.0 + 4.0 * 11.3);
    let mut src = DcpSource::new(32, 7, None).unwrap();
    let mut counts = vec![0; 32];
    for _ in 0..32_000 {
        counts[psi_from_dcp(&src.draw(&mut rng), &mut rng).label()] += 1;
    }
    assert!(chi2(&counts, 32_000) < 31.0 + 4.0 * 7.9);
}

#[test]
fn combine_sign_ratio() {
    let mut rng = StdRng::seed_from_u64(8);
    let (a, b) = (phase_state_for(16, 4, 3), phase_state_for(16, 12, 3));
    let trials = 10_000;
    let zeros = (0..trials).filter(|_| combine(a, b, &mut rng).unwrap().label() == 0).count() as f64;
    let sigma = (trials as f64 * 0.25).sqrt();
    assert!((zeros - trials as f64 / 2.0).abs() < 4.0 * sigma);
    for k in 0..16 {
        for l in 0..16 {
            let c = combine(phase_state_for(16, k, 5), phase_state_for(16, l, 5), &mut rng).unwrap().label();
            assert!(c == (k + l) % 16 || c == (k + 16 - l) % 16);
            for i in 0..3 {
                if (k >> i) % 2 == 1 && (l >> i) % 2 == 1 && k % (1 << i) == 0 && l % (1 << i) == 0 {
                    let (p, m) = ((k + l) % 16, (k + 16 - l) % 16);
                    assert!(p % (1 << (i + 1)) == 0 || m % (1 << (i + 1)) == 0);
                }
            }
        }
    }
}

#[test]
fn kuperberg_recovers_slopes() {
    let mut rng = StdRng::seed_from_u64(9);
    let cfg = KuperbergConfig::default();
    let ok = (0..50)
        .filter(|_| {
            let d = rng.gen_range(0..256);
            kuperberg(&slope_oracle(256, d), &cfg, &mut rng).unwrap().d == Some(d)
        })
        .count();
    assert!(ok >= 45, "{ok}/50");
}

#[test]
fn kuperberg_with_failures_still_votes_correctly() {
    let mut rng = StdRng::seed_from_u64(19);
    let cfg = KuperbergConfig { failure_p: Some(2.0), ..Default::default() };
    let ok = (0..20)
        .filter(|_| {
            let d = rng.gen_range(0..64);
            kuperberg(&slope_oracle(64, d), &cfg, &mut rng).unwrap().d == Some(d)
        })
        .count();
    assert!(ok >= 16, "{ok}/20");
}

#[test]
fn elimination_totals() {
    for n in 2..=12u32 {
        let p = elimination_profile(n).unwrap();
        assert_eq!(p.expected, p.closed_form, "n = {n}");
        if n <= 10 {
            assert_eq!(p.per_k, p.per_k_brute);
        }
    }
}

#[test]
fn index_map_injective() {
    let mut seen = std::collections::HashSet::new();
    for a in 0..2 {
        for b in 0..2 {
            for c in 0..2 {
                assert!(seen.insert(two_point_index_map(2, &[a, b, c]).unwrap()));
            }
        }
    }
    // M a power of two: bit concatenation
    assert_eq!(two_point_index_map(4, &[3, 1, 2]).unwrap(), 0b010_001_011);
}

#[test]
fn parity_superposition() {
    let mut rng = StdRng::seed_from_u64(10);
    for bits in 2..=6 {
        let n = 1 << bits;
        for d in 0..n {
            let r = parity_superposition_experiment(bits, d, 0, &mut rng).unwrap();
            assert!((r.gram_antisymmetric - r.exact_antisymmetric).abs() < 1e-12);
        }
        for _ in 0..8 {
            let (d, j1, j2) = (rng.gen_range(0..n), rng.gen_range(0..n / 2), rng.gen_range(0..n / 2));
            let (psi, phi) = parity_states(n, d, j1, j2);
            let bf = measure_classes(&psi, &phi);
            let tb = perturbed_table(n, d, j1, j2);
            for c in 0..3 {
                assert!((bf[c] - tb[c]).abs() < 1e-12, "N = {n}, d = {d}, j = ({j1}, {j2})");
            }
        }
    }
    let trials = 10_000;
    let r = parity_superposition_experiment(5, 7, trials, &mut rng).unwrap();
    let sigma = (0.25 / trials as f64).sqrt();
    assert!((r.empirical_antisymmetric - 0.5).abs() < 4.0 * sigma);
}

#[test]
fn window_overlap() {
    let mut rng = StdRng::seed_from_u64(12);
    for m in [1, 2, 4, 8, 16] {
        let n = 4 * m;
        for d in 0..n {
            for a in (0..n).step_by(3) {
                let r = window_overlap_experiment(m, d, a, 0, None, &mut rng).unwrap();
                assert_eq!(r.l, r.l_formula);
                assert!((r.exact_p - r.gram_p).abs() < 1e-12);
            }
        }
    }
    // l = 0 happens at |d - a| = N'
    let r = window_overlap_experiment(4, 8, 0, 0, None, &mut rng).unwrap();
    assert_eq!(r.l, 0);
    assert_eq!(r.exact_p, 0.5);
    let trials = 10_000;
    let r = window_overlap_experiment(8, 7, 0, trials, None, &mut rng).unwrap();
    let sigma = (r.exact_p * (1.0 - r.exact_p) / trials as f64).sqrt();
    assert!((r.empirical_p - r.exact_p).abs() < 4.0 * sigma);
    for m in [256, 512] {
        let r = window_overlap_experiment(m, 100, 0, 0, None, &mut rng).unwrap();
        let l = (r.n as f64).log2();
        assert!(r.blind_width > r.n_prime as f64 / (l * l));
        assert_ne!(r.decision, WindowDecision::Undecided);
    }
}
