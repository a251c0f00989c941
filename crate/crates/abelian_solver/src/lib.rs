//! Abelian hidden subgroups: character sampling, Smith normal form kernels, and the classic
//! instances built on them.

pub mod decompose;
pub mod dlog;
pub mod hperp;
pub mod shor;
pub mod simon;
pub mod snf;
pub mod solve;
pub mod variant;

pub use decompose::{decompose_abelian, decompose_generated, is_invariant_form};
pub use dlog::{discrete_log, dlog_oracle, is_generator, DlogReport};
pub use hperp::{
    character_kernel, coord_span, cyclic_period, pairing, sample_cyclic, sample_hperp, small_generating_set,
    AbelianDecomposition, CharacterSample, HperpSampler,
};
pub use shor::{
    convergent_denominators, is_prime, mod_pow, prime_power, shor_factor, shor_period, shor_period_statevector,
    shor_statevector_distribution, working_modulus, ShorReport,
};
pub use simon::{simon_oracle, simon_solve, SimonDevice};
pub use snf::{integer_kernel, mat_mul, smith_normal_form, IMat, SnfResult};
pub use solve::{ceil_log2, default_trials, solve_abelian, solve_with, EXTRA_SAMPLES};
pub use variant::{abelian_variant, cyclic_steps, cyclic_variant, AbelianVariantReport, CyclicVariantReport, ReductionState};
