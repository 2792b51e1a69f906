//! Bit-packed linear algebra over `F_2`, modules for finite groups built as
//! subquotients of permutation modules, and integer correspondences.

mod bits;
mod corr;
mod module;

pub use bits::{rref_rows, F2Mat, F2Subspace, F2Vec};
pub use corr::{correspondence_from_surjection, element_permutations, Correspondence, SURJECTION_DIM_CAP};
pub use module::{check_fixed_surjectivity, perm_matrix, perm_module, AmbientKind, GModule, GModuleRepr, ModuleMap};
