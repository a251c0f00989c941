//! Acceptance criteria 1-12, each a self-contained check with its own seeded stream.

use abelian_solver::{
    abelian_variant, cyclic_variant, default_trials, discrete_log, is_generator, shor::is_prime, shor::mod_pow,
    shor_factor, simon_oracle, simon_solve, solve_with, AbelianDecomposition, HperpSampler,
};
use dihedral_lab::{
    dihedral_analytic, eh_solve, elimination_profile, kuperberg, parity_superposition_experiment, slope_oracle,
    window_overlap_experiment, KuperbergConfig,
};
use fourier::build_qft;
use group_core::{
    abelian_types, all_subgroups, dihedral_subgroups, is_normal, subgroup_closure, GroupSpec, HspError, Result,
    Subgroup,
};
use rand::Rng as _;
use reductions::{
    asymmetric_tree7, decide_rigid_iso, find_isomorphism, gapcvp_build, reduction_verify, rigid_graphs, sat_corpus,
    sat_kernel, wreath_union_oracle, Graph, IsoSolver, KernelMethod,
};
use rep_theory::{abelian_irreps, dihedral_irreps, irreps_for, validate_table, DihedralBasis, Mat};
use sampling::{
    brute_force_rows, oracle_from_subgroup, solve_normal_with, strong_fs_distribution, weak_fs_distribution,
    FourierSampler,
};
use serde_json::{json, Map, Value};

use crate::commands::{eh_gap, pipeline_strong_with, quotient_gap, random_basis, weak_blindness_gap};
use crate::report::{num, Report, Table};
use crate::{rng_for, Rng};

pub const COUNT: u32 = 12;

#[derive(Debug, Clone, PartialEq)]
pub struct Criterion {
    pub id: u32,
    pub title: &'static str,
    pub pass: bool,
    pub metrics: Map<String, Value>,
}

impl Criterion {
    fn new(id: u32, title: &'static str) -> Self {
        Criterion { id, title, pass: true, metrics: Map::new() }
    }

    fn metric(&mut self, k: &str, v: impl Into<Value>) {
        self.metrics.insert(k.into(), v.into());
    }

    /// Records a residual and fails the criterion unless it is below `tol`.
    fn below(&mut self, k: &str, x: f64, tol: f64) {
        self.metric(k, num(x));
        self.pass &= x < tol;
    }

    /// Records `ok/total` and fails unless `ok >= need`.
    fn rate(&mut self, k: &str, ok: usize, total: usize, need: usize) {
        self.metric(k, format!("{ok}/{total}"));
        self.pass &= ok >= need;
    }

    fn check(&mut self, k: &str, ok: bool) {
        self.metric(k, ok);
        self.pass &= ok;
    }

    /// One summary line, e.g. `criterion 3: PASS (QFT unitarity) max_residual=...`.
    pub fn line(&self) -> String {
        let m: Vec<String> = self.metrics.iter().map(|(k, v)| format!("{k}={}", plain(v))).collect();
        format!("criterion {}: {} ({}) {}", self.id, if self.pass { "PASS" } else { "FAIL" }, self.title, m.join(" "))
    }
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// Runs criterion `id` with a stream derived from `seed`.
pub fn run_criterion(id: u32, seed: u64) -> Result<Criterion> {
    let mut rng = rng_for(seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(u64::from(id)));
    match id {
        1 => c1_d4_tables(),
        2 => c2_identities(),
        3 => c3_unitarity(),
        4 => c4_rows(),
        5 => c5_dihedral(&mut rng),
        6 => c6_solvers(&mut rng),
        7 => c7_eh(&mut rng),
        8 => c8_kuperberg(&mut rng),
        9 => c9_superpositions(&mut rng),
        10 => c10_eliminations(),
        11 => c11_sat(&mut rng),
        12 => c12_graphs(&mut rng),
        _ => Err(HspError::Parse(format!("criterion {id} does not exist (1..={COUNT})"))),
    }
}

pub fn parse_ids(id: &str) -> Result<Vec<u32>> {
    if id == "all" {
        return Ok((1..=COUNT).collect());
    }
    match id.parse::<u32>() {
        Ok(n) if (1..=COUNT).contains(&n) => Ok(vec![n]),
        _ => Err(HspError::Parse(format!("criterion `{id}` must be 1..={COUNT} or `all`"))),
    }
}

pub fn accept_report(id: &str, seed: u64) -> Result<Report> {
    let ids = parse_ids(id)?;
    let mut rep = Report::new("accept", seed);
    rep.config("id", id);
    rep.table = Table::new(&["criterion", "title", "pass", "metrics"]);
    let mut passed = 0;
    for i in ids.iter().copied() {
        let c = run_criterion(i, seed)?;
        passed += usize::from(c.pass);
        rep.failed |= !c.pass;
        let metrics = Value::Object(c.metrics.clone());
        rep.table.push(vec![i.into(), c.title.into(), c.pass.into(), metrics.to_string().into()]);
        rep.result(&i.to_string(), json!({ "title": c.title, "pass": c.pass, "metrics": metrics }));
    }
    rep.result("passed", format!("{passed}/{}", ids.len()));
    Ok(rep)
}

fn c1_d4_tables() -> Result<Criterion> {
    let mut c = Criterion::new(1, "D4 weak and strong tables");
    let g = GroupSpec::dihedral(4);
    let t = dihedral_irreps(4);
    let qft = build_qft(&t)?;
    let h1 = subgroup_closure(&g, &[5])?;
    let h2 = subgroup_closure(&g, &[2])?;
    c.check("h1_elements", h1.elements() == [0, 5]);
    c.check("h2_elements", h2.elements() == [0, 2]);
    let weak = [("h1", &h1, [0.25, 0.0, 0.0, 0.25, 0.5]), ("h2", &h2, [0.25, 0.25, 0.25, 0.25, 0.0])];
    for (name, h, expect) in weak {
        let w = weak_fs_distribution(&t, h);
        let err = (0..5).map(|r| (w.get(&r) - expect[r]).abs()).fold(0.0, f64::max);
        c.below(&format!("weak_{name}_err"), err, 1e-12);
    }
    // (rho, j) over psi0..psi3, tau1 rows 0 and 1.
    let strong = [
        ("h1", &h1, [0.25, 0.0, 0.0, 0.25, 0.25, 0.25]),
        ("h2", &h2, [0.25, 0.25, 0.25, 0.25, 0.0, 0.0]),
    ];
    let labels = [(0, 0), (1, 0), (2, 0), (3, 0), (4, 0), (4, 1)];
    for (name, h, expect) in strong {
        let s = strong_fs_distribution(&t, h);
        let err = labels.iter().zip(expect).map(|(l, e)| (s.get(l) - e).abs()).fold(0.0, f64::max);
        c.below(&format!("strong_{name}_err"), err, 1e-12);
        let orc = oracle_from_subgroup(&g, h)?;
        let pipe = brute_force_rows(&qft, &orc)?.map(|l| (l.0, l.2));
        c.below(&format!("strong_{name}_vs_statevector"), pipe.max_diff(&s), 1e-12);
    }
    Ok(c)
}

fn c2_identities() -> Result<Criterion> {
    let mut c = Criterion::new(2, "representation identities");
    let (mut worst, mut tables) = (0.0f64, 0usize);
    for n in 1..=256 {
        for t in abelian_types(n) {
            worst = worst.max(validate_table(&abelian_irreps(&GroupSpec::abelian(&t))?).max());
            tables += 1;
        }
    }
    c.below("abelian_max_residual", worst, 1e-9);
    let mut worst = 0.0f64;
    for n in 1..=64 {
        worst = worst.max(validate_table(&dihedral_irreps(n)).max());
        tables += 1;
    }
    c.below("dihedral_max_residual", worst, 1e-9);
    c.metric("tables", tables);
    Ok(c)
}

/// `max |F^dagger F - I|` over the upper triangle, on a split column-major copy.
pub fn unitarity_residual(m: &Mat) -> f64 {
    let (rows, cols) = (m.rows(), m.cols());
    let mut re = vec![0.0; rows * cols];
    let mut im = vec![0.0; rows * cols];
    for (idx, z) in m.data().iter().enumerate() {
        let (r, col) = (idx / cols, idx % cols);
        re[col * rows + r] = z.re;
        im[col * rows + r] = z.im;
    }
    let mut worst: f64 = 0.0;
    for i in 0..cols {
        let (ar, ai) = (&re[i * rows..(i + 1) * rows], &im[i * rows..(i + 1) * rows]);
        for j in i..cols {
            let (br, bi) = (&re[j * rows..(j + 1) * rows], &im[j * rows..(j + 1) * rows]);
            let (sr, si) = dot_conj(ar, ai, br, bi);
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max(((sr - target).powi(2) + si * si).sqrt());
        }
    }
    worst
}

/// `sum conj(a) b` with four independent lanes so the loop vectorizes.
fn dot_conj(ar: &[f64], ai: &[f64], br: &[f64], bi: &[f64]) -> (f64, f64) {
    let mut sr = [0.0; 4];
    let mut si = [0.0; 4];
    let n = ar.len() / 4 * 4;
    for k in (0..n).step_by(4) {
        for l in 0..4 {
            sr[l] += ar[k + l] * br[k + l] + ai[k + l] * bi[k + l];
            si[l] += ar[k + l] * bi[k + l] - ai[k + l] * br[k + l];
        }
    }
    let (mut r, mut i) = (sr.iter().sum::<f64>(), si.iter().sum::<f64>());
    for k in n..ar.len() {
        r += ar[k] * br[k] + ai[k] * bi[k];
        i += ar[k] * bi[k] - ai[k] * br[k];
    }
    (r, i)
}

fn c3_unitarity() -> Result<Criterion> {
    let mut c = Criterion::new(3, "QFT unitarity");
    let (mut worst, mut groups) = (0.0f64, 0usize);
    for n in 1..=512 {
        for t in abelian_types(n) {
            worst = worst.max(unitarity_residual(&build_qft(&abelian_irreps(&GroupSpec::abelian(&t))?)?.matrix));
            groups += 1;
        }
    }
    c.below("abelian_max_residual", worst, 1e-9);
    let mut worst = 0.0f64;
    for n in 1..=256 {
        let table = rep_theory::dihedral_irreps_in_basis(n, &DihedralBasis::identity(n))?;
        worst = worst.max(unitarity_residual(&build_qft(&table)?.matrix));
        groups += 1;
    }
    for n in [7, 64] {
        let table = rep_theory::dihedral_irreps_in_basis(n, &DihedralBasis::hadamard(n))?;
        worst = worst.max(unitarity_residual(&build_qft(&table)?.matrix));
        groups += 1;
    }
    c.below("dihedral_max_residual", worst, 1e-9);
    c.metric("tables", groups);
    Ok(c)
}

fn c4_rows() -> Result<Criterion> {
    let mut c = Criterion::new(4, "row independence");
    let mut cases: Vec<(GroupSpec, Subgroup)> = Vec::new();
    for n in 1..=16 {
        let g = GroupSpec::dihedral(n);
        for h in dihedral_subgroups(n) {
            cases.push((g.clone(), h.materialize()?));
        }
    }
    let z = GroupSpec::abelian(&[2, 2, 2]);
    for h in all_subgroups(&z)? {
        cases.push((z.clone(), h));
    }
    let mut worst = 0.0f64;
    for (g, h) in &cases {
        let t = irreps_for(g)?;
        let qft = build_qft(&t)?;
        let rows = brute_force_rows(&qft, &oracle_from_subgroup(g, h)?)?;
        for (r, rep) in t.irreps.iter().enumerate() {
            for j in 0..rep.dim {
                let p0 = rows.get(&(r, 0, j));
                for i in 1..rep.dim {
                    worst = worst.max((rows.get(&(r, i, j)) - p0).abs());
                }
            }
        }
    }
    c.below("max_row_spread", worst, 1e-12);
    c.metric("cases", cases.len());
    Ok(c)
}

fn c5_dihedral(rng: &mut Rng) -> Result<Criterion> {
    let mut c = Criterion::new(5, "dihedral closed forms and equivalences");
    let mut worst = 0.0f64;
    for n in 1..=16 {
        for basis in [DihedralBasis::identity(n), DihedralBasis::hadamard(n), random_basis(n, rng)] {
            let qft = build_qft(&rep_theory::dihedral_irreps_in_basis(n, &basis)?)?;
            for h in dihedral_subgroups(n) {
                let a = dihedral_analytic(n, &h, &basis)?;
                let b = pipeline_strong_with(&qft, n, &h)?;
                worst = worst.max(a.strong.max_diff(&b)).max(a.weak.max_diff(&b.map(|l| l.0)));
            }
        }
    }
    c.below("a_closed_vs_pipeline", worst, 1e-9);
    let mut worst = 0.0f64;
    for n in 1..=32 {
        for d in 0..n {
            worst = worst.max(eh_gap(n, d)?);
        }
    }
    c.below("b_strong_to_eh", worst, 1e-12);
    let mut worst = 0.0f64;
    for n in 1..=24 {
        let basis = random_basis(n, rng);
        for h in dihedral_subgroups(n) {
            worst = worst.max(quotient_gap(n, &h, &basis)?);
        }
    }
    c.below("c_quotient", worst, 1e-12);
    let mut worst = 0.0f64;
    for n in (1..=31).step_by(2) {
        worst = worst.max(weak_blindness_gap(n)?);
        let t = dihedral_irreps(n);
        let base = weak_fs_distribution(&t, &group_core::DihedralSubgroup::slope(n, 0).materialize()?);
        for d in 1..n {
            let w = weak_fs_distribution(&t, &group_core::DihedralSubgroup::slope(n, d).materialize()?);
            worst = worst.max(w.max_diff(&base));
        }
    }
    c.below("d_weak_blind_odd", worst, 1e-12);
    Ok(c)
}

fn c6_solvers(rng: &mut Rng) -> Result<Criterion> {
    let mut c = Criterion::new(6, "abelian and normal solvers");
    let ok = (0..100)
        .filter(|_| {
            let s = rng.gen_range(0..64u64);
            simon_solve(6, &simon_oracle(s), rng).map(|x| x.0) == Ok(s)
        })
        .count();
    c.rate("simon_n6", ok, 100, 99);
    for (n0, f) in [(15u64, [3u64, 5]), (21, [3, 7])] {
        let ok = (0..100).filter(|_| shor_factor(n0, rng).is_ok_and(|r| f.contains(&r.factor))).count();
        c.rate(&format!("shor_{n0}"), ok, 100, 99);
    }
    let primes: Vec<u64> = (3..=101).filter(|&p| is_prime(p)).collect();
    let ok = (0..100)
        .filter(|_| {
            let p = primes[rng.gen_range(0..primes.len())];
            let g = (2..p).find(|&g| is_generator(p, g)).expect("cyclic");
            let x = rng.gen_range(1..p);
            discrete_log(p, g, x, rng).is_ok_and(|r| mod_pow(g, r.y, p) == x)
        })
        .count();
    c.rate("dlog_p_le_101", ok, 100, 99);

    let mut groups: Vec<GroupSpec> = (1..=24).map(GroupSpec::dihedral).collect();
    for n in 1..=48 {
        groups.extend(abelian_types(n).iter().map(|t| GroupSpec::abelian(t)));
    }
    let (mut pairs, mut worst) = (0usize, 100usize);
    for g in &groups {
        let qft = build_qft(&irreps_for(g)?)?;
        for h in all_subgroups(g)?.into_iter().filter(|h| is_normal(g, h)) {
            let s = FourierSampler::new(&qft, &oracle_from_subgroup(g, &h)?)?;
            let mut ok = 0;
            for _ in 0..100 {
                ok += usize::from(solve_normal_with(&s, &qft, 4.0, rng)?.elements() == h.elements());
            }
            worst = worst.min(ok);
            pairs += 1;
        }
    }
    c.rate("normal_c4_worst", worst, 100, 99);
    c.metric("normal_pairs", pairs);

    let n = 1u64 << 10;
    let mut ok = 0;
    for _ in 0..100 {
        let d = 1u64 << rng.gen_range(0..=10);
        ok += usize::from(cyclic_variant(n, &move |x| x % d, 4.0, rng)?.d == d);
    }
    c.rate("cyclic_variant_2_10", ok, 100, 99);
    for (name, g) in [("z2^4", GroupSpec::abelian(&[2; 4])), ("z12", GroupSpec::cyclic(12))] {
        let dec = AbelianDecomposition::standard(&g)?;
        let mut worst = 100;
        for h in all_subgroups(&g)? {
            let oracle = oracle_from_subgroup(&g, &h)?;
            let mut ok = 0;
            for _ in 0..100 {
                let r = abelian_variant(&g, &dec, &oracle, rng)?;
                ok += usize::from(r.hidden.elements() == h.elements() && r.basis.order() == h.order());
            }
            worst = worst.min(ok);
        }
        c.rate(&format!("abelian_variant_{name}_worst"), worst, 100, 99);
    }
    // The character-sampling solver on the same two groups, every subgroup.
    for (name, g) in [("z2^4", GroupSpec::abelian(&[2; 4])), ("z12", GroupSpec::cyclic(12))] {
        let dec = AbelianDecomposition::standard(&g)?;
        let mut worst = 100;
        for h in all_subgroups(&g)? {
            let oracle = oracle_from_subgroup(&g, &h)?;
            let sampler = HperpSampler::new(&g, &dec, &oracle)?;
            let mut ok = 0;
            for _ in 0..100 {
                let found = solve_with(&g, &dec, &oracle, &sampler, default_trials(g.order()), rng)?;
                ok += usize::from(found.elements() == h.elements());
            }
            worst = worst.min(ok);
        }
        c.rate(&format!("solve_abelian_{name}_worst"), worst, 100, 99);
    }
    Ok(c)
}

fn c7_eh(rng: &mut Rng) -> Result<Criterion> {
    let mut c = Criterion::new(7, "Ettinger-Hoyer recovery");
    let mut ok = 0;
    for _ in 0..100 {
        let n = rng.gen_range(2..=64);
        let d = rng.gen_range(0..n);
        let m = 16 * abelian_solver::ceil_log2(n);
        ok += usize::from(eh_solve(&slope_oracle(n, d), Some(m), rng)?.d == Some(d));
    }
    c.rate("random_n_le_64", ok, 100, 90);
    Ok(c)
}

fn median(v: &mut [u64]) -> u64 {
    v.sort_unstable();
    v[v.len() / 2]
}

fn c8_kuperberg(rng: &mut Rng) -> Result<Criterion> {
    let mut c = Criterion::new(8, "Kuperberg sieve scaling");
    let cfg = KuperbergConfig { budget: 10_000_000, ..Default::default() };
    let runs = 30;
    let mut medians = Vec::new();
    let mut worst = runs;
    for bits in 1..=12u32 {
        let n = 1usize << bits;
        let mut ok = 0;
        let mut q = Vec::with_capacity(runs);
        for _ in 0..runs {
            let d = rng.gen_range(0..n);
            let r = kuperberg(&slope_oracle(n, d), &cfg, rng)?;
            ok += usize::from(r.d == Some(d) && r.queries <= cfg.budget);
            q.push(r.queries);
        }
        worst = worst.min(ok);
        medians.push(median(&mut q));
    }
    c.rate("worst_success", worst, runs, runs * 9 / 10);
    c.metric("median_queries", medians.clone());
    c.check("medians_monotone", medians.windows(2).all(|w| w[0] <= w[1]));
    let ratio = medians[11] as f64 / medians[5] as f64;
    c.below("q12_over_q6", ratio, 64.0);
    Ok(c)
}

fn c9_superpositions(rng: &mut Rng) -> Result<Criterion> {
    let mut c = Criterion::new(9, "value-set superposition experiments");
    let mut worst = 0.0f64;
    for bits in 2..=6u32 {
        for d in 0..1usize << bits {
            let r = parity_superposition_experiment(bits, d, 0, rng)?;
            worst = worst.max((r.gram_antisymmetric - r.exact_antisymmetric).abs());
        }
    }
    c.below("parity_exact_vs_gram", worst, 1e-12);
    let (mut worst, mut l_ok) = (0.0f64, true);
    for m in [1, 2, 4, 8, 16] {
        for d in 0..4 * m {
            for a in 0..4 * m {
                let r = window_overlap_experiment(m, d, a, 0, None, rng)?;
                worst = worst.max((r.exact_p - r.gram_p).abs());
                l_ok &= r.l == r.l_formula;
            }
        }
    }
    c.below("window_exact_vs_gram", worst, 1e-12);
    c.check("window_overlap_formula", l_ok);
    let trials = 10_000;
    let r = parity_superposition_experiment(5, 7, trials, rng)?;
    let sigma = (r.exact_antisymmetric * (1.0 - r.exact_antisymmetric) / trials as f64).sqrt();
    c.below("parity_empirical_sigmas", (r.empirical_antisymmetric - r.exact_antisymmetric).abs() / sigma, 4.0);
    let r = window_overlap_experiment(8, 7, 0, trials, None, rng)?;
    let sigma = (r.exact_p * (1.0 - r.exact_p) / trials as f64).sqrt();
    c.below("window_empirical_sigmas", (r.empirical_p - r.exact_p).abs() / sigma, 4.0);
    let mut margin = f64::INFINITY;
    for m in [256, 512, 1024] {
        let r = window_overlap_experiment(m, 100, 0, 0, None, rng)?;
        let l = (r.n as f64).log2();
        margin = margin.min(r.blind_width / (r.n_prime as f64 / (l * l)));
    }
    c.metric("blind_width_over_bound_min", num(margin));
    c.pass &= margin > 1.0;
    Ok(c)
}

fn c10_eliminations() -> Result<Criterion> {
    let mut c = Criterion::new(10, "expected eliminations 1 + n/4");
    let (mut exact, mut per_k) = (true, true);
    for n in 2..=12u32 {
        let p = elimination_profile(n)?;
        exact &= p.expected == p.closed_form;
        let big = 1u64 << n;
        // Independent count of d with cos^2(pi k d / N) = 0, i.e. 2kd = N mod 2N.
        let brute: Vec<u64> =
            (1..big).map(|k| (0..big).filter(|&d| 2 * (k * d % big) == big).count() as u64).collect();
        per_k &= p.per_k == brute;
        if !p.per_k_brute.is_empty() {
            per_k &= p.per_k_brute == brute;
        }
    }
    c.check("expected_equals_closed_form", exact);
    c.check("per_k_brute_force", per_k);
    Ok(c)
}

fn c11_sat(rng: &mut Rng) -> Result<Criterion> {
    let mut c = Criterion::new(11, "3SAT to GapCVP corpus");
    let corpus = sat_corpus();
    c.check("corpus_at_least_20", corpus.len() >= 20);
    c.metric("instances", corpus.len());
    let (mut agree, mut hom, mut kernel, mut methods) = (0, true, true, 0);
    for (_, inst) in &corpus {
        let k = sat_kernel(inst, KernelMethod::Snf, rng)?;
        let m = &k.oracle.hom.modulus;
        for _ in 0..200 {
            let x: Vec<num_bigint::BigInt> = (0..inst.n()).map(|_| rand_big(m, rng)).collect();
            let y: Vec<num_bigint::BigInt> = (0..inst.n()).map(|_| rand_big(m, rng)).collect();
            let s: Vec<num_bigint::BigInt> = x.iter().zip(&y).map(|(a, b)| a + b).collect();
            hom &= k.oracle.hom.eval(&s) == (k.oracle.hom.eval(&x) + k.oracle.hom.eval(&y)) % m;
        }
        kernel &= k.generators.iter().chain(&k.basis.vectors).all(|g| k.oracle.hom.eval(g) == 0u32.into());
        kernel &= k.oracle.hom.eval(&k.p) == k.oracle.target;
        kernel &= k.binary_coset_points() == inst.solutions()?;
        if let Ok(kh) = sat_kernel(inst, KernelMethod::Hsp, rng) {
            kernel &= kh.basis == k.basis;
            methods += 1;
        }
        let v = reduction_verify(inst, &gapcvp_build(&k)?)?;
        agree += usize::from(v.agree && v.points_satisfy && v.top_dominates);
    }
    c.rate("agree", agree, corpus.len(), corpus.len());
    c.check("homomorphism_exact", hom);
    c.check("kernel_exact", kernel);
    c.metric("hsp_kernel_cross_checked", methods);
    Ok(c)
}

fn rand_big(m: &num_bigint::BigInt, rng: &mut Rng) -> num_bigint::BigInt {
    // Moduli here are at most 4^8, well inside u64.
    let m64: u64 = m.try_into().expect("small modulus");
    rng.gen_range(0..m64).into()
}

fn c12_graphs(rng: &mut Rng) -> Result<Criterion> {
    let mut c = Criterion::new(12, "rigid graph isomorphism");
    let mut empty = true;
    for n in 2..=5 {
        empty &= rigid_graphs(n)?.is_empty();
    }
    c.check("no_rigid_connected_2_to_5", empty);
    let mut graphs: Vec<Graph> = rigid_graphs(1)?;
    graphs.extend(rigid_graphs(6)?);
    let six = graphs.len() - 1;
    c.metric("rigid_classes_n1_n6", graphs.len());
    let tree = asymmetric_tree7();
    let closed = Graph::new(7, &[(0, 1), (0, 2), (1, 2), (2, 3), (0, 4), (4, 5), (5, 6)])?;
    let (mut pairs, mut ok, mut orders_ok) = (0, 0, true);
    let mut check = |a: &Graph, b: &Graph| -> Result<()> {
        let brute = find_isomorphism(a, b)?.is_some();
        let hidden = wreath_union_oracle(a, b)?.hidden().map(|h| h.order());
        orders_ok &= hidden == Some(if brute { 2 } else { 1 });
        let e = decide_rigid_iso(a, b, IsoSolver::Exhaustive)?;
        let x = decide_rigid_iso(a, b, IsoSolver::External)?;
        let witness_ok = e.witness.as_ref().map_or(true, |w| a.permute(w) == *b);
        ok += usize::from(e.isomorphic == brute && x.isomorphic == brute && witness_ok);
        pairs += 1;
        Ok(())
    };
    for a in &graphs {
        for b in &graphs {
            if a.n() == b.n() {
                let w = group_core::perm::unrank(b.n(), rng.gen_range(0..group_core::perm::factorial(b.n())));
                check(a, &b.permute(&w))?;
            }
        }
    }
    for _ in 0..4 {
        let w = group_core::perm::unrank(7, rng.gen_range(0..group_core::perm::factorial(7)));
        check(&tree, &tree.permute(&w))?;
        check(&tree, &closed.permute(&w))?;
    }
    c.rate("verdicts_match_brute_force", ok, pairs, pairs);
    c.check("hidden_order_1_or_2", orders_ok);
    c.metric("six_vertex_classes", six);
    Ok(c)
}
