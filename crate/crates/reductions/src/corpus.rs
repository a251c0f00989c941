//! Fixed desk-scale instances for the SAT-to-lattice reduction.

use crate::sat::SatInstance;

/// Four triples on four variables: any single true variable hits three clauses, so no 1-in-3
/// assignment exists.
pub fn k4_unsat() -> SatInstance {
    SatInstance::new(4, vec![[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]]).expect("valid")
}

/// Named instances, all with `n <= 6, N <= 2` except the two unsatisfiable ones built on `K4`.
pub fn sat_corpus() -> Vec<(String, SatInstance)> {
    let specs: &[(usize, &[[usize; 3]])] = &[
        (3, &[[0, 1, 2]]),
        (4, &[[0, 1, 2]]),
        (4, &[[1, 2, 3]]),
        (4, &[[0, 2, 3]]),
        (5, &[[0, 1, 2]]),
        (5, &[[2, 3, 4]]),
        (5, &[[0, 2, 4]]),
        (6, &[[0, 1, 2]]),
        (6, &[[3, 4, 5]]),
        (6, &[[0, 1, 2], [3, 4, 5]]),
        (6, &[[0, 1, 2], [0, 3, 4]]),
        (6, &[[0, 1, 2], [2, 3, 4]]),
        (6, &[[0, 1, 2], [0, 1, 3]]),
        (6, &[[0, 1, 2], [1, 4, 5]]),
        (6, &[[0, 1, 3], [2, 4, 5]]),
        (6, &[[0, 2, 4], [1, 3, 5]]),
        (6, &[[0, 3, 5], [1, 3, 4]]),
        (5, &[[0, 1, 2], [0, 3, 4]]),
        (5, &[[0, 1, 2], [2, 3, 4]]),
        (5, &[[0, 1, 2], [1, 2, 3]]),
        (4, &[[0, 1, 2], [1, 2, 3]]),
        (4, &[[0, 1, 2], [0, 1, 3]]),
        (5, &[[1, 2, 3], [0, 3, 4]]),
        (6, &[[0, 1, 2], [5, 4, 3]]),
    ];
    let mut out: Vec<(String, SatInstance)> = specs
        .iter()
        .enumerate()
        .map(|(i, (n, cl))| (format!("small-{i:02}"), SatInstance::new(*n, cl.to_vec()).expect("valid")))
        .collect();
    out.push(("k4".into(), k4_unsat()));
    out.push(("k4-fresh".into(), k4_unsat().with_fresh_first()));
    out
}
