//! Reductions to hidden subgroup problems: graph automorphism and rigid isomorphism over
//! symmetric groups, and monotone 1-in-3 3SAT through a kernel computation to GapCVP.

pub mod corpus;
pub mod graph;
pub mod lattice;
pub mod sat;

pub use corpus::{k4_unsat, sat_corpus};
pub use graph::{
    alternating_check, asymmetric_tree7, decide_rigid_iso, find_isomorphism, graph_auto_oracle, parse_edge_list,
    rigid_graphs, swap_signature, wreath_elem, wreath_embedding, wreath_split, wreath_union_oracle, AlternatingCheck,
    Graph, IsoSolver, IsoVerdict,
};
pub use lattice::{
    cvp_search, determinant, forward_coefficients, gapcvp_build, inf_distance, reduction_verify, CvpPoint,
    LatticeInstance, ReductionVerdict, Q,
};
pub use sat::{
    extract_basis, kernel_generators, parse_sat, sat_kernel, sat_oracle, KernelBasis, KernelMethod, ModuleHom,
    SatInstance, SatKernel, SatOracle,
};
