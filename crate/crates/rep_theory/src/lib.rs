//! Irreducible representation tables for abelian and dihedral groups.

pub mod basis;
pub mod irreps;
pub mod matrix;
pub mod validate;

pub use basis::DihedralBasis;
pub use irreps::{
    abelian_irreps, change_basis, dihedral_irreps, fit_unitary2, dihedral_irreps_in_basis, irreps_for, num_tau, rep_kernel,
    tau_index, tau_matrix, unitarize, unitary2, BasisLabel, IrrepTable, Representation, MAT_TOL,
};
pub use matrix::{cis, root_of_unity, Mat, C64};
pub use validate::{validate_table, TableReport};
