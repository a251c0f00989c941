//! Dihedral hidden subgroup experiments: Ettinger-Hoyer, DCP and the Kuperberg sieve.

pub mod analytic;
pub mod superposition;
pub mod dcp;
pub mod eh;
pub mod elimination;
pub mod kuperberg;

pub use analytic::{
    dcp_strong_distribution, dcp_to_strong, dihedral_analytic, dihedral_reduce, eh_distribution, quotient_label,
    restrict_basis, s_r, solve_dihedral, strong_to_eh, strong_to_eh_distribution, AnalyticFs, DihedralVerdict,
    Reduction,
};
pub use superposition::{parity_superposition_experiment, window_overlap_experiment, ParityReport, WindowReport};
pub use dcp::{
    combine, dcp_blackbox, hidden_slope, phase_state_for, psi_from_dcp, slope_oracle, DcpSource, DcpState, PhaseState,
};
pub use eh::{eh_default_samples, eh_nll, eh_probabilities, eh_sample, eh_solve, eh_statevector, EhDevice, EhReport, EhSample};
pub use elimination::{elimination_profile, two_point_index_map, EliminationProfile};
pub use kuperberg::{descend_oracle, kuperberg, KuperbergConfig, KuperbergReport, LevelStats};
