//! Hiding oracles, coset states and weak/strong Fourier sampling, both in closed form and
//! by state-vector simulation.

pub mod dist;
pub mod fs;
pub mod normal;
pub mod oracle;
pub mod sim;

pub use dist::{cumulative, sample_cdf, Distribution};
pub use fourier::StateVector;
pub use fs::{joint_fs_distribution, rho_of, strong_fs_distribution, weak_fs_distribution, JointLabel, StrongLabel};
pub use normal::{normal_sample_count, MIN_NORMAL_SAMPLES, size_probe, solve_normal_hsp, solve_normal_with, SizeVerdict};
pub use oracle::{oracle_from_subgroup, HidingOracle};
pub use sim::{
    brute_force_joint, brute_force_rows, coset_state, sample_coset, sample_fourier, FourierSampler, FsMode,
    FsObservation,
};
