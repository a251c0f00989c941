//! Dense quantum Fourier transform over a finite group for a chosen irrep table.

use group_core::{GroupSpec, HspError, Result};
use rep_theory::{IrrepTable, Mat, C64, MAT_TOL};

/// Amplitudes over a basis of size `|G|`; the basis is either group elements or
/// Fourier labels `(rho, i, j)` in flat order.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    pub amplitudes: Vec<C64>,
}

impl StateVector {
    pub fn new(amplitudes: Vec<C64>) -> Self {
        StateVector { amplitudes }
    }

    pub fn basis(dim: usize, i: usize) -> Self {
        let mut a = vec![C64::new(0.0, 0.0); dim];
        a[i] = C64::new(1.0, 0.0);
        StateVector { amplitudes: a }
    }

    pub fn uniform(dim: usize) -> Self {
        let v = C64::new(1.0 / (dim as f64).sqrt(), 0.0);
        StateVector { amplitudes: vec![v; dim] }
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.amplitudes.iter().map(|a| a.norm_sqr()).collect()
    }

    pub fn inner(&self, other: &StateVector) -> C64 {
        self.amplitudes.iter().zip(&other.amplitudes).map(|(a, b)| a.conj() * b).sum()
    }
}

#[derive(Debug, Clone)]
pub struct QftMatrix {
    pub group: GroupSpec,
    pub table: IrrepTable,
    pub matrix: Mat,
}

/// Largest group for which a dense transform is built.
pub const QFT_CAP: usize = 4096;

/// Row `(rho, i, j)`, column `g` holds `sqrt(d_rho / |G|) rho_ij(g)`.
pub fn build_qft(table: &IrrepTable) -> Result<QftMatrix> {
    let g = &table.group;
    let n = g.order();
    if n > QFT_CAP {
        return Err(HspError::Capacity { what: "dense QFT".into(), size: n, cap: QFT_CAP });
    }
    if table.dims_squared() != n {
        return Err(HspError::Precondition(format!(
            "irrep table is incomplete: sum of squared dims {} != {n}",
            table.dims_squared()
        )));
    }
    let mut m = Mat::zeros(n, n);
    let mut row = 0;
    for rep in &table.irreps {
        if rep.matrices.len() != n {
            return Err(HspError::Precondition(format!("irrep {} has the wrong length", rep.label)));
        }
        let scale = (rep.dim as f64 / n as f64).sqrt();
        for i in 0..rep.dim {
            for j in 0..rep.dim {
                for x in 0..n {
                    m[(row, x)] = rep.matrices[x][(i, j)] * scale;
                }
                row += 1;
            }
        }
    }
    Ok(QftMatrix { group: g.clone(), table: table.clone(), matrix: m })
}

impl QftMatrix {
    pub fn unitarity_residual(&self) -> f64 {
        self.matrix.unitarity_residual()
    }
}

pub fn apply_qft(f: &QftMatrix, state: &StateVector) -> Result<StateVector> {
    if state.dim() != f.group.order() {
        return Err(HspError::Domain(format!(
            "state has dimension {}, transform acts on {}",
            state.dim(),
            f.group.order()
        )));
    }
    if (state.norm_sqr() - 1.0).abs() > MAT_TOL {
        return Err(HspError::Precondition("state is not normalized".into()));
    }
    Ok(StateVector::new(f.matrix.mul_vec(&state.amplitudes)))
}

/// Success probability `|G| / 2^n` of preparing a uniform superposition over `|G|` encodings
/// by Hadamards on `n = ceil(log2 |G|)` qubits followed by a comparison and postselection.
pub fn prep_success_probability(order: usize) -> f64 {
    let n = usize::BITS - (order.max(1) - 1).leading_zeros();
    order as f64 / (1u64 << n) as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use rep_theory::{abelian_irreps, dihedral_irreps};
    use std::f64::consts::PI;

    #[test]
    fn z2_is_hadamard() {
        let f = build_qft(&abelian_irreps(&GroupSpec::cyclic(2)).unwrap()).unwrap();
        let s = 0.5f64.sqrt();
        assert!((f.matrix[(1, 1)].re + s).abs() < 1e-15 && (f.matrix[(0, 1)].re - s).abs() < 1e-15);
        let x = apply_qft(&f, &StateVector::basis(2, 1)).unwrap();
        let y = apply_qft(&f, &x).unwrap();
        assert!((y.amplitudes[1].re - 1.0).abs() < 1e-15);
    }

    #[test]
    fn zn_matches_dft() {
        let n = 12;
        let f = build_qft(&abelian_irreps(&GroupSpec::cyclic(n)).unwrap()).unwrap();
        for j in 0..n {
            for k in 0..n {
                let want = C64::from_polar(1.0 / (n as f64).sqrt(), 2.0 * PI * (j * k) as f64 / n as f64);
                assert!((f.matrix[(j, k)] - want).norm() < 1e-12);
            }
        }
        let u = apply_qft(&f, &StateVector::basis(n, 0)).unwrap();
        assert!(u.amplitudes.iter().all(|a| (a.re - 1.0 / (n as f64).sqrt()).abs() < 1e-12));
    }

    #[test]
    fn d4_unitary() {
        let f = build_qft(&dihedral_irreps(4)).unwrap();
        assert!(f.unitarity_residual() < 1e-12);
        assert!(apply_qft(&f, &StateVector::basis(6, 0)).is_err());
    }

    #[test]
    fn prep_bound() {
        assert_eq!(prep_success_probability(8), 1.0);
        assert_eq!(prep_success_probability(5), 5.0 / 8.0);
        assert!((1..2000).all(|n| prep_success_probability(n) > 0.5 || n == 1));
    }
}
