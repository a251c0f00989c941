//! Finite groups with integer-encoded elements, subgroups, cosets and quotients.

pub mod dihedral;
mod error;
pub mod group;
pub mod parse;
pub mod perm;
pub mod subgroup;

pub use dihedral::{dihedral_subgroups, divisors, DihedralSubgroup};
pub use error::{HspError, Result};
pub use group::{abelian_types, enumerate_elements, enumerate_elements_capped, CayleyTable, Elem, GroupKind, GroupSpec, DEFAULT_CAP};
pub use parse::{parse_elements, parse_group};
pub use subgroup::{
    all_subgroups, coset_labels, coset_representatives, is_normal, quotient_group, subgroup_closure,
    subgroup_closure_capped, Subgroup,
};
