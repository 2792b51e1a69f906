//! Theta characteristic combinatorics: quadratic forms over `F_2`, the
//! canonical structure of odd forms and their zero-sum quadruples, recovery
//! of the symplectic space from an incidence structure, and isomorphism
//! matching of incidence structures.

mod canonical;
mod forms;
mod matching;
mod recover;

pub use canonical::{sigma_count_formula, CanonicalTheta, IncidenceStructure};
pub use forms::{arf, quad_solve, DegTwo, QuadForm, SymplecticSpace};
pub use matching::{match_incidence, match_structures};
pub use recover::{recover_symplectic, RecoveredSymplectic};
