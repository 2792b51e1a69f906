//! Permutation groups: deterministic Schreier–Sims chains, orbits,
//! stabilizers, element enumeration and subgroup search.

mod group;
mod perm;
mod search;

pub use group::{GroupFile, PermGroup, ENUMERATION_CAP};
pub use perm::{cycle_type_string, Perm};
pub use search::{search_subgroup, SearchParams};
