//! One runner per subcommand. Each returns a filled [`Report`].

use std::f64::consts::PI;

use abelian_solver::{
    discrete_log, is_generator, shor_factor, simon_oracle, simon_solve, solve_abelian, AbelianDecomposition,
};
use dihedral_lab::{
    dihedral_analytic, eh_default_samples, eh_probabilities, eh_solve, elimination_profile, kuperberg,
    parity_superposition_experiment, psi_from_dcp, quotient_label, restrict_basis, slope_oracle,
    strong_to_eh_distribution, window_overlap_experiment, DcpSource, KuperbergConfig,
};
use fourier::{build_qft, QftMatrix};
use group_core::{
    dihedral_subgroups, is_normal, parse_elements, parse_group, subgroup_closure, DihedralSubgroup, Elem, GroupKind,
    GroupSpec, HspError, Result, Subgroup,
};
use rand::Rng as _;
use reductions::{
    decide_rigid_iso, gapcvp_build, graph_auto_oracle, parse_edge_list, parse_sat, reduction_verify, sat_corpus,
    sat_kernel, Graph, IsoSolver, KernelMethod, LatticeInstance, SatInstance,
};
use rep_theory::{dihedral_irreps_in_basis, irreps_for, num_tau, validate_table, DihedralBasis, IrrepTable};
use sampling::{
    brute_force_rows, joint_fs_distribution, oracle_from_subgroup, solve_normal_with, strong_fs_distribution,
    weak_fs_distribution, Distribution, FourierSampler, FsMode, StrongLabel,
};
use serde_json::{json, Value};

use crate::report::{num, rational, Report, Table};
use crate::{BasisChoice, Command, Experiment, KernelChoice, Mode, Rng, Solver};

pub fn dispatch(cmd: &Command, seed: u64, rng: &mut Rng) -> Result<Report> {
    match cmd {
        Command::Fs { group, subgroup, mode, basis, samples } => fs(seed, group, subgroup, *mode, *basis, *samples, rng),
        Command::SolveAbelian { group, subgroup, trials, runs } => {
            solve_abelian_cmd(seed, group, subgroup, *trials, *runs, rng)
        }
        Command::Simon { n, s, runs } => simon(seed, *n, *s, *runs, rng),
        Command::Shor { n, runs } => shor(seed, *n, *runs, rng),
        Command::Dlog { p, g, x, runs } => dlog(seed, *p, *g, *x, *runs, rng),
        Command::NormalHsp { group, subgroup, c, runs } => normal_hsp(seed, group, subgroup, *c, *runs, rng),
        Command::EhSolve { n, d, m, runs } => eh(seed, *n, *d, *m, *runs, rng),
        Command::Kuperberg { n, d, budget, failure_p, runs } => kuperberg_cmd(seed, *n, *d, *budget, *failure_p, *runs, rng),
        Command::Dcp { n, d, failure_p, samples } => dcp(seed, *n, *d, *failure_p, *samples, rng),
        Command::AppendixB { n, basis } => appendix_b(seed, *n, *basis, rng),
        Command::AppendixG { experiment, n, d, a, trials, p } => appendix_g(seed, *experiment, *n, *d, *a, *trials, *p, rng),
        Command::Eliminations { n } => eliminations(seed, *n),
        Command::Reduce3sat { input, corpus, verify, method } => {
            reduce_3sat(seed, input.as_deref(), *corpus, *verify, *method, rng)
        }
        Command::GraphIso { g1, g2, solver } => graph_iso(seed, g1, g2.as_deref(), *solver),
        Command::Accept { id } => crate::accept::accept_report(id, seed),
    }
}

/// Natural coordinates of `x`, e.g. `(1,1)`.
pub fn show_elem(g: &GroupSpec, x: Elem) -> String {
    let c = g.coords(x);
    if c.len() == 1 {
        c[0].to_string()
    } else {
        format!("({})", c.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(","))
    }
}

fn show_subgroup(g: &GroupSpec, h: &Subgroup) -> Value {
    Value::Array(h.elements().iter().map(|&x| Value::String(show_elem(g, x))).collect())
}

fn dihedral_n(g: &GroupSpec) -> Option<usize> {
    match g.kind() {
        GroupKind::Dihedral(n) => Some(*n),
        _ => None,
    }
}

/// Uniformly random `(lambda, mu)` per 2-dimensional irrep.
pub fn random_basis(n: usize, rng: &mut Rng) -> DihedralBasis {
    let m = num_tau(n);
    let lambda = (0..m).map(|_| rng.gen::<f64>()).collect();
    let mu = (0..m).map(|_| rng.gen::<f64>() * 2.0 * PI).collect();
    DihedralBasis::new(n, lambda, mu).expect("parameters in range")
}

pub fn make_basis(n: usize, choice: BasisChoice, rng: &mut Rng) -> DihedralBasis {
    match choice {
        BasisChoice::Identity => DihedralBasis::identity(n),
        BasisChoice::Hadamard => DihedralBasis::hadamard(n),
        BasisChoice::Random => random_basis(n, rng),
    }
}

fn table_for(g: &GroupSpec, basis: BasisChoice, rng: &mut Rng) -> Result<IrrepTable> {
    match dihedral_n(g) {
        Some(n) => dihedral_irreps_in_basis(n, &make_basis(n, basis, rng)),
        None if basis == BasisChoice::Identity => irreps_for(g),
        None => Err(HspError::Precondition("--basis applies to dihedral groups only".into())),
    }
}

fn parse_subgroup(g: &GroupSpec, s: &str) -> Result<Subgroup> {
    subgroup_closure(g, &parse_elements(g, s)?)
}

fn mode_name(m: Mode) -> &'static str {
    match m {
        Mode::Weak => "weak",
        Mode::Strong => "strong",
        Mode::Joint => "joint",
    }
}

fn basis_name(b: BasisChoice) -> &'static str {
    match b {
        BasisChoice::Identity => "identity",
        BasisChoice::Hadamard => "hadamard",
        BasisChoice::Random => "random",
    }
}

fn fs(seed: u64, group: &str, sub: &str, mode: Mode, basis: BasisChoice, samples: usize, rng: &mut Rng) -> Result<Report> {
    let g = parse_group(group)?;
    let h = parse_subgroup(&g, sub)?;
    let table = table_for(&g, basis, rng)?;
    let mut rep = Report::new("fs", seed);
    rep.config("group", group).config("subgroup", sub).config("mode", mode_name(mode));
    rep.config("basis", basis_name(basis)).config("samples", samples);
    rep.result("group_order", g.order()).result("subgroup", show_subgroup(&g, &h));
    rep.residual("irrep_identities", validate_table(&table).max());
    let label = |r: usize| table.irreps[r].label.clone();
    let total;
    let mut empirical_gap = None;
    match mode {
        Mode::Weak => {
            let d = weak_fs_distribution(&table, &h);
            total = d.total();
            rep.table = Table::new(&["rho", "p"]);
            for r in 0..table.irreps.len() {
                rep.table.push(vec![label(r).into(), num(d.get(&r))]);
            }
            if samples > 0 {
                let draws = draw(&g, &h, &table, FsMode::Weak, samples, rng)?;
                let emp = Distribution::empirical(&draws.iter().map(|o| o.0).collect::<Vec<_>>());
                empirical_gap = Some(emp.max_diff(&d));
            }
        }
        Mode::Strong => {
            let d = strong_fs_distribution(&table, &h);
            total = d.total();
            rep.table = Table::new(&["rho", "j", "p"]);
            for (r, irrep) in table.irreps.iter().enumerate() {
                for j in 0..irrep.dim {
                    rep.table.push(vec![label(r).into(), j.into(), num(d.get(&(r, j)))]);
                }
            }
            if samples > 0 {
                let draws = draw(&g, &h, &table, FsMode::Strong, samples, rng)?;
                let emp = Distribution::empirical(&draws.iter().map(|o| (o.0, o.2)).collect::<Vec<StrongLabel>>());
                empirical_gap = Some(emp.max_diff(&d));
            }
        }
        Mode::Joint => {
            let d = joint_fs_distribution(&table, &h)?;
            total = d.total();
            rep.table = Table::new(&["rho", "i", "j", "value", "p"]);
            for (&(r, i, j, v), &p) in &d.outcomes {
                rep.table.push(vec![label(r).into(), i.into(), j.into(), v.into(), num(p)]);
            }
            if samples > 0 {
                let draws = draw(&g, &h, &table, FsMode::Joint, samples, rng)?;
                let emp = Distribution::empirical(&draws);
                empirical_gap = Some(emp.max_diff(&d));
            }
        }
    }
    rep.residual("total_minus_one", (total - 1.0).abs());
    if let Some(gap) = empirical_gap {
        rep.residual("empirical_max_diff", gap);
    }
    Ok(rep)
}

fn draw(
    g: &GroupSpec,
    h: &Subgroup,
    table: &IrrepTable,
    mode: FsMode,
    samples: usize,
    rng: &mut Rng,
) -> Result<Vec<(usize, usize, usize, u64)>> {
    let qft = build_qft(table)?;
    let oracle = oracle_from_subgroup(g, h)?;
    let s = FourierSampler::new(&qft, &oracle)?;
    Ok((0..samples)
        .map(|_| {
            let o = s.draw(mode, rng);
            (o.rho, o.i.unwrap_or(0), o.j.unwrap_or(0), o.value.unwrap_or(0))
        })
        .collect())
}

fn solve_abelian_cmd(seed: u64, group: &str, sub: &str, trials: Option<usize>, runs: usize, rng: &mut Rng) -> Result<Report> {
    let g = parse_group(group)?;
    let h = parse_subgroup(&g, sub)?;
    let dec = AbelianDecomposition::standard(&g)?;
    let oracle = oracle_from_subgroup(&g, &h)?;
    let mut rep = Report::new("solve-abelian", seed);
    rep.config("group", group).config("subgroup", sub).config("trials", trials).config("runs", runs);
    rep.table = Table::new(&["run", "order", "correct"]);
    let mut ok = 0;
    let mut last = None;
    for run in 0..runs {
        let found = solve_abelian(&g, &dec, &oracle, trials, rng)?;
        let correct = found.elements() == h.elements();
        ok += usize::from(correct);
        rep.table.push(vec![run.into(), found.order().into(), correct.into()]);
        last = Some(found);
    }
    if let Some(found) = last {
        rep.result("recovered", show_subgroup(&g, &found));
    }
    rep.result("successes", ok).result("runs", runs);
    rep.failed = runs > 0 && ok == 0;
    Ok(rep)
}

fn simon(seed: u64, n: u32, s: Option<u64>, runs: usize, rng: &mut Rng) -> Result<Report> {
    if !(1..=20).contains(&n) {
        return Err(HspError::Domain(format!("n = {n} must lie in 1..=20")));
    }
    let s = s.unwrap_or_else(|| rng.gen_range(0..1u64 << n));
    if s >> n != 0 {
        return Err(HspError::Domain(format!("s = {s} has more than {n} bits")));
    }
    let mut rep = Report::new("simon", seed);
    rep.config("n", n).config("s", s).config("runs", runs);
    rep.table = Table::new(&["run", "recovered", "samples", "correct"]);
    let f = simon_oracle(s);
    let mut ok = 0;
    for run in 0..runs {
        let (found, samples) = simon_solve(n, &f, rng)?;
        ok += usize::from(found == s);
        rep.table.push(vec![run.into(), found.into(), samples.into(), (found == s).into()]);
    }
    rep.result("successes", ok).result("runs", runs);
    rep.failed = runs > 0 && ok == 0;
    Ok(rep)
}

fn shor(seed: u64, n0: u64, runs: usize, rng: &mut Rng) -> Result<Report> {
    let mut rep = Report::new("shor", seed);
    rep.config("N", n0).config("runs", runs);
    rep.table = Table::new(&["run", "factor", "cofactor", "base", "period", "attempts"]);
    let mut ok = 0;
    for run in 0..runs {
        let r = shor_factor(n0, rng)?;
        let good = r.factor > 1 && r.factor < n0 && n0 % r.factor == 0;
        ok += usize::from(good);
        rep.table.push(vec![
            run.into(),
            r.factor.into(),
            (n0 / r.factor.max(1)).into(),
            r.base.into(),
            r.period.into(),
            r.attempts.into(),
        ]);
    }
    rep.result("successes", ok).result("runs", runs);
    rep.failed = runs > 0 && ok == 0;
    Ok(rep)
}

fn dlog(seed: u64, p: u64, g: Option<u64>, x: Option<u64>, runs: usize, rng: &mut Rng) -> Result<Report> {
    if p < 3 || !abelian_solver::shor::is_prime(p) {
        return Err(HspError::Domain(format!("p = {p} must be an odd prime")));
    }
    let g = match g {
        Some(g) => g,
        None => (2..p).find(|&g| is_generator(p, g)).expect("Z_p^* is cyclic"),
    };
    let x = x.unwrap_or_else(|| rng.gen_range(1..p));
    let mut rep = Report::new("dlog", seed);
    rep.config("p", p).config("g", g).config("x", x).config("runs", runs);
    rep.table = Table::new(&["run", "y", "samples", "correct"]);
    let mut ok = 0;
    for run in 0..runs {
        let r = discrete_log(p, g, x, rng)?;
        let good = abelian_solver::shor::mod_pow(g, r.y, p) == x;
        ok += usize::from(good);
        rep.table.push(vec![run.into(), r.y.into(), r.samples.into(), good.into()]);
    }
    rep.result("successes", ok).result("runs", runs);
    rep.failed = runs > 0 && ok == 0;
    Ok(rep)
}

fn normal_hsp(seed: u64, group: &str, sub: &str, c: f64, runs: usize, rng: &mut Rng) -> Result<Report> {
    let g = parse_group(group)?;
    let h = parse_subgroup(&g, sub)?;
    let qft = build_qft(&irreps_for(&g)?)?;
    let oracle = oracle_from_subgroup(&g, &h)?;
    let sampler = FourierSampler::new(&qft, &oracle)?;
    let mut rep = Report::new("normal-hsp", seed);
    rep.config("group", group).config("subgroup", sub).config("c", num(c)).config("runs", runs);
    rep.result("normal", is_normal(&g, &h));
    rep.result("samples_per_run", sampling::normal_sample_count(g.order(), c));
    rep.table = Table::new(&["run", "order", "correct"]);
    let mut ok = 0;
    let mut last = None;
    for run in 0..runs {
        let found = solve_normal_with(&sampler, &qft, c, rng)?;
        let good = found.elements() == h.elements();
        ok += usize::from(good);
        rep.table.push(vec![run.into(), found.order().into(), good.into()]);
        last = Some(found);
    }
    if let Some(found) = last {
        rep.result("recovered", show_subgroup(&g, &found));
    }
    rep.result("successes", ok).result("runs", runs);
    rep.failed = runs > 0 && ok == 0 && is_normal(&g, &h);
    Ok(rep)
}

fn eh(seed: u64, n: usize, d: Option<usize>, m: Option<usize>, runs: usize, rng: &mut Rng) -> Result<Report> {
    if n == 0 {
        return Err(HspError::Domain("N must be positive".into()));
    }
    let d = d.unwrap_or_else(|| rng.gen_range(0..n));
    if d >= n {
        return Err(HspError::Domain(format!("d = {d} outside Z_{n}")));
    }
    let m = m.unwrap_or_else(|| eh_default_samples(n));
    let oracle = slope_oracle(n, d);
    let mut rep = Report::new("eh-solve", seed);
    rep.config("N", n).config("d", d).config("m", m).config("runs", runs);
    rep.table = Table::new(&["run", "recovered", "candidate", "tie", "samples", "oracle_calls", "verified"]);
    let mut ok = 0;
    for run in 0..runs {
        let r = eh_solve(&oracle, Some(m), rng)?;
        ok += usize::from(r.d == Some(d));
        rep.table.push(vec![
            run.into(),
            r.d.into(),
            r.candidate.into(),
            r.tie.into(),
            r.samples.into(),
            r.oracle_calls.into(),
            r.verified.into(),
        ]);
    }
    rep.result("successes", ok).result("runs", runs);
    rep.failed = runs > 0 && ok == 0;
    Ok(rep)
}

#[allow(clippy::too_many_arguments)]
fn kuperberg_cmd(
    seed: u64,
    bits: u32,
    d: Option<usize>,
    budget: u64,
    failure_p: Option<f64>,
    runs: usize,
    rng: &mut Rng,
) -> Result<Report> {
    if !(1..=24).contains(&bits) {
        return Err(HspError::Domain(format!("n = {bits} must lie in 1..=24")));
    }
    let n = 1usize << bits;
    let d = d.unwrap_or_else(|| rng.gen_range(0..n));
    if d >= n {
        return Err(HspError::Domain(format!("d = {d} outside Z_{n}")));
    }
    let cfg = KuperbergConfig { budget, failure_p, ..Default::default() };
    let oracle = slope_oracle(n, d);
    let mut rep = Report::new("kuperberg", seed);
    rep.config("n", bits).config("N", n).config("d", d).config("budget", budget);
    rep.config("failure_p", failure_p.map(num)).config("runs", runs);
    rep.table = Table::new(&["run", "recovered", "queries", "correct"]);
    let mut ok = 0;
    let mut levels = Vec::new();
    for run in 0..runs {
        let r = kuperberg(&oracle, &cfg, rng)?;
        ok += usize::from(r.d == Some(d));
        rep.table.push(vec![run.into(), r.d.into(), r.queries.into(), (r.d == Some(d)).into()]);
        if run == 0 {
            levels = r
                .levels
                .iter()
                .map(|l| {
                    json!({
                        "bits": l.bits,
                        "stage_width": l.stage_width,
                        "queries": l.queries,
                        "combines": l.combines,
                        "discarded": l.discarded,
                        "finals": l.finals,
                        "votes_for_one": l.votes_for_one,
                    })
                })
                .collect();
        }
    }
    rep.result("successes", ok).result("runs", runs).result("levels_first_run", levels);
    rep.failed = runs > 0 && ok == 0;
    Ok(rep)
}

fn dcp(seed: u64, bits: u32, d: usize, failure_p: Option<f64>, samples: usize, rng: &mut Rng) -> Result<Report> {
    if !(1..=40).contains(&bits) {
        return Err(HspError::Domain(format!("n = {bits} must lie in 1..=40")));
    }
    let n = 1usize << bits;
    let mut src = DcpSource::new(n, d, failure_p)?;
    let mut rep = Report::new("dcp", seed);
    rep.config("n", bits).config("N", n).config("d", d).config("failure_p", failure_p.map(num)).config("samples", samples);
    rep.result("corruption_probability", num(src.corruption_probability()));
    rep.table = Table::new(&["sample", "x", "corrupted", "psi_label"]);
    let mut corrupted = 0;
    for i in 0..samples {
        let s = src.draw(rng);
        let psi = psi_from_dcp(&s, rng);
        corrupted += usize::from(s.is_corrupted());
        rep.table.push(vec![i.into(), s.x().into(), s.is_corrupted().into(), psi.label().into()]);
    }
    rep.result("queries", src.queries()).result("corrupted", corrupted);
    Ok(rep)
}

/// Strong law from the state-vector simulation: QFT of the coset state, summed over rows.
pub fn pipeline_strong(n: usize, h: &DihedralSubgroup, basis: &DihedralBasis) -> Result<Distribution<StrongLabel>> {
    let qft = build_qft(&dihedral_irreps_in_basis(n, basis)?)?;
    pipeline_strong_with(&qft, n, h)
}

pub fn pipeline_strong_with(qft: &QftMatrix, n: usize, h: &DihedralSubgroup) -> Result<Distribution<StrongLabel>> {
    let orc = oracle_from_subgroup(&GroupSpec::dihedral(n), &h.materialize()?)?;
    Ok(brute_force_rows(qft, &orc)?.map(|l| (l.0, l.2)))
}

/// `max |P_N(label) - P_r(quotient label)|` over the union of both supports.
pub fn quotient_gap(n: usize, h: &DihedralSubgroup, basis: &DihedralBasis) -> Result<f64> {
    let big = dihedral_analytic(n, h, basis)?.strong;
    let rb = restrict_basis(basis, h.r)?;
    let small_h = match h.d {
        Some(d) => DihedralSubgroup::slope(h.r, d),
        None => DihedralSubgroup::rotations(h.r, h.r),
    };
    let small = dihedral_analytic(h.r, &small_h, &rb)?.strong;
    let mapped = small.map(|l| (quotient_label(n, h.r, l.0), l.1));
    Ok(big.max_diff(&mapped))
}

/// `max |strong-to-EH image - EH law|` for the slope subgroup `<(d, 1)>` in the Hadamard basis.
pub fn eh_gap(n: usize, d: usize) -> Result<f64> {
    let a = dihedral_analytic(n, &DihedralSubgroup::slope(n, d), &DihedralBasis::hadamard(n))?;
    let mapped = strong_to_eh_distribution(n, &a.strong);
    let eh = eh_probabilities(n, d);
    Ok(mapped.iter().zip(&eh).flat_map(|(a, b)| [(a[0] - b[0]).abs(), (a[1] - b[1]).abs()]).fold(0.0, f64::max))
}

/// Largest change of the weak law across slopes; zero when weak sampling is blind.
pub fn weak_blindness_gap(n: usize) -> Result<f64> {
    let basis = DihedralBasis::identity(n);
    let base = dihedral_analytic(n, &DihedralSubgroup::slope(n, 0), &basis)?.weak;
    let mut gap: f64 = 0.0;
    for d in 1..n {
        gap = gap.max(dihedral_analytic(n, &DihedralSubgroup::slope(n, d), &basis)?.weak.max_diff(&base));
    }
    Ok(gap)
}

fn appendix_b(seed: u64, n: usize, basis: BasisChoice, rng: &mut Rng) -> Result<Report> {
    if !(1..=64).contains(&n) {
        return Err(HspError::Domain(format!("N = {n} must lie in 1..=64")));
    }
    let b = make_basis(n, basis, rng);
    let qft = build_qft(&dihedral_irreps_in_basis(n, &b)?)?;
    let mut rep = Report::new("appendix-b", seed);
    rep.config("N", n).config("basis", basis_name(basis));
    rep.table = Table::new(&["subgroup", "order", "closed_vs_pipeline", "quotient_gap", "eh_gap"]);
    let (mut worst_pipe, mut worst_q, mut worst_eh) = (0.0f64, 0.0f64, 0.0f64);
    for h in dihedral_subgroups(n) {
        let a = dihedral_analytic(n, &h, &b)?;
        let pipe = a.strong.max_diff(&pipeline_strong_with(&qft, n, &h)?);
        let q = quotient_gap(n, &h, &b)?;
        let e = match h.d {
            Some(d) if h.r == n => Some(eh_gap(n, d)?),
            _ => None,
        };
        worst_pipe = worst_pipe.max(pipe);
        worst_q = worst_q.max(q);
        worst_eh = worst_eh.max(e.unwrap_or(0.0));
        rep.table.push(vec![h.label().into(), h.order().into(), num(pipe), num(q), e.map(num).into()]);
    }
    rep.residual("closed_vs_pipeline", worst_pipe).residual("quotient", worst_q).residual("strong_to_eh", worst_eh);
    let blind = weak_blindness_gap(n)?;
    rep.residual("weak_slope_dependence", blind);
    rep.result("weak_blind", blind < 1e-12);
    rep.failed = worst_pipe >= 1e-9 || worst_q >= 1e-12 || worst_eh >= 1e-12 || (n % 2 == 1 && blind >= 1e-12);
    Ok(rep)
}

#[allow(clippy::too_many_arguments)]
fn appendix_g(
    seed: u64,
    exp: Experiment,
    n: usize,
    d: usize,
    a: usize,
    trials: usize,
    p: Option<f64>,
    rng: &mut Rng,
) -> Result<Report> {
    match exp {
        Experiment::Parity => {
            let bits = u32::try_from(n).map_err(|_| HspError::Domain("n too large".into()))?;
            let r = parity_superposition_experiment(bits, d, trials, rng)?;
            let mut rep = Report::new("appendix-g", seed);
            rep.config("experiment", "parity").config("n", n).config("d", d).config("trials", trials);
            rep.result("N", r.n)
                .result("exact_antisymmetric", num(r.exact_antisymmetric))
                .result("gram_antisymmetric", num(r.gram_antisymmetric))
                .result("empirical_antisymmetric", num(r.empirical_antisymmetric));
            rep.residual("exact_vs_gram", (r.exact_antisymmetric - r.gram_antisymmetric).abs());
            if trials > 0 {
                let sigma = (r.exact_antisymmetric * (1.0 - r.exact_antisymmetric) / trials as f64).sqrt();
                rep.residual("empirical_sigmas", sigma_ratio(r.empirical_antisymmetric - r.exact_antisymmetric, sigma));
            }
            rep.failed = (r.exact_antisymmetric - r.gram_antisymmetric).abs() >= 1e-12;
            Ok(rep)
        }
        Experiment::Window => {
            let r = window_overlap_experiment(n, d, a, trials, p, rng)?;
            let mut rep = Report::new("appendix-g", seed);
            rep.config("experiment", "window").config("m", n).config("d", d).config("a", a);
            rep.config("trials", trials).config("p", num(r.p));
            rep.result("N", r.n)
                .result("N_prime", r.n_prime)
                .result("l", r.l)
                .result("l_formula", r.l_formula)
                .result("exact_p", num(r.exact_p))
                .result("gram_p", num(r.gram_p))
                .result("empirical_p", num(r.empirical_p))
                .result("hoeffding_m", r.hoeffding_m)
                .result("t", num(r.t))
                .result("l_estimate", num(r.l_estimate))
                .result("blind_low", num(r.blind_low))
                .result("blind_high", num(r.blind_high))
                .result("blind_width", num(r.blind_width))
                .result("decision", r.decision.as_str());
            rep.residual("exact_vs_gram", (r.exact_p - r.gram_p).abs());
            if trials > 0 {
                let sigma = (r.exact_p * (1.0 - r.exact_p) / trials as f64).sqrt();
                rep.residual("empirical_sigmas", sigma_ratio(r.empirical_p - r.exact_p, sigma));
            }
            rep.failed = (r.exact_p - r.gram_p).abs() >= 1e-12 || r.l != r.l_formula;
            Ok(rep)
        }
    }
}

fn sigma_ratio(dev: f64, sigma: f64) -> f64 {
    if sigma > 0.0 {
        dev.abs() / sigma
    } else if dev == 0.0 {
        0.0
    } else {
        f64::INFINITY
    }
}

fn eliminations(seed: u64, n: u32) -> Result<Report> {
    let p = elimination_profile(n)?;
    let mut rep = Report::new("eliminations", seed);
    rep.config("n", n);
    rep.result("N", 1u64 << n)
        .result("expected", rational(&p.expected))
        .result("closed_form", rational(&p.closed_form))
        .result("exact_match", p.expected == p.closed_form)
        .result("one_dim_eliminated", p.one_dim)
        .result("brute_force_checked", !p.per_k_brute.is_empty());
    let brute_ok = p.per_k_brute.is_empty() || p.per_k == p.per_k_brute;
    rep.result("per_k_match", brute_ok);
    // Labels k grouped by their 2-adic valuation i: each eliminates 2^i slopes.
    rep.table = Table::new(&["valuation", "labels", "eliminated_each"]);
    for i in 0..n {
        let labels = 1u64 << (n - 1 - i);
        rep.table.push(vec![i.into(), labels.into(), (1u64 << i).into()]);
    }
    rep.failed = p.expected != p.closed_form || !brute_ok;
    Ok(rep)
}

fn lattice_json(lat: &LatticeInstance) -> Value {
    json!({
        "dimension": lat.basis.len(),
        "modulus": lat.modulus.to_string(),
        "basis": lat.basis.iter().map(|r| r.iter().map(rational).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "target": lat.target.iter().map(rational).collect::<Vec<_>>(),
        "bound": rational(&lat.bound),
        "epsilon": rational(&lat.epsilon),
    })
}

fn method(m: KernelChoice) -> KernelMethod {
    match m {
        KernelChoice::Snf => KernelMethod::Snf,
        KernelChoice::Hsp => KernelMethod::Hsp,
    }
}

fn reduce_3sat(
    seed: u64,
    input: Option<&std::path::Path>,
    corpus: bool,
    verify: bool,
    m: KernelChoice,
    rng: &mut Rng,
) -> Result<Report> {
    let mut rep = Report::new("reduce-3sat", seed);
    rep.config("method", if m == KernelChoice::Snf { "snf" } else { "hsp" }).config("verify", verify);
    let instances: Vec<(String, SatInstance)> = match (input, corpus) {
        (Some(path), false) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| HspError::Parse(format!("cannot read {}: {e}", path.display())))?;
            rep.config("in", path.display().to_string());
            vec![(path.display().to_string(), parse_sat(&text)?)]
        }
        (None, true) => {
            rep.config("corpus", true);
            sat_corpus()
        }
        _ => return Err(HspError::Parse("pass exactly one of --in <file> or --corpus".into())),
    };
    rep.table = Table::new(&["instance", "n", "clauses", "sat", "cvp", "agree", "solutions", "nodes"]);
    let single = instances.len() == 1;
    let mut all_agree = true;
    for (name, inst) in &instances {
        let k = sat_kernel(inst, method(m), rng)?;
        let lat = gapcvp_build(&k)?;
        if single {
            rep.result("lattice", lattice_json(&lat));
            rep.result("kernel_pivot", k.basis.pivot);
        }
        if verify || !single {
            let v = reduction_verify(inst, &lat)?;
            all_agree &= v.agree && v.points_satisfy;
            rep.table.push(vec![
                name.clone().into(),
                inst.n().into(),
                inst.num_clauses().into(),
                v.sat.into(),
                v.cvp.into(),
                v.agree.into(),
                v.sat_solutions.into(),
                v.nodes.into(),
            ]);
            if single {
                rep.result("sat", v.sat).result("cvp", v.cvp).result("agree", v.agree);
            }
        }
    }
    if verify || !single {
        rep.result("all_agree", all_agree);
        rep.failed = !all_agree;
    }
    Ok(rep)
}

fn read_graph(path: &std::path::Path) -> Result<Graph> {
    let text =
        std::fs::read_to_string(path).map_err(|e| HspError::Parse(format!("cannot read {}: {e}", path.display())))?;
    parse_edge_list(&text)
}

fn graph_iso(seed: u64, g1: &std::path::Path, g2: Option<&std::path::Path>, solver: Solver) -> Result<Report> {
    let a = read_graph(g1)?;
    let mut rep = Report::new("graph-iso", seed);
    rep.config("g1", g1.display().to_string());
    match g2 {
        None => {
            let f = graph_auto_oracle(&a)?;
            let auts = f.hidden().map(|h| h.elements().to_vec()).unwrap_or_default();
            rep.result("n", a.n()).result("automorphism_group_order", auts.len()).result("rigid", auts.len() == 1);
            rep.table = Table::new(&["automorphism"]);
            for x in auts {
                let p = group_core::perm::unrank(a.n(), x);
                rep.table.push(vec![format!("{p:?}").replace(' ', "").into()]);
            }
        }
        Some(p2) => {
            let b = read_graph(p2)?;
            rep.config("g2", p2.display().to_string());
            rep.config("solver", if solver == Solver::Exhaustive { "exhaustive" } else { "external" });
            let s = match solver {
                Solver::Exhaustive => IsoSolver::Exhaustive,
                Solver::External => IsoSolver::External,
            };
            let v = decide_rigid_iso(&a, &b, s)?;
            rep.result("isomorphic", v.isomorphic)
                .result("witness", v.witness.clone())
                .result("complemented", v.complemented)
                .result("oracle_calls", v.oracle_calls);
            if let Some(w) = &v.witness {
                let ok = a.permute(w) == b;
                rep.result("witness_checked", ok);
                rep.failed = !ok;
            }
        }
    }
    Ok(rep)
}
