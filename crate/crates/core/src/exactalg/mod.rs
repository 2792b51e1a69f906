//! Exact arithmetic: integers, rationals, finite fields, polynomials,
//! resultants and factorization.

mod ffactor;
mod fp;
mod fq;
mod intfactor;
mod linalg;
mod mpoly;
mod poly;
mod resultant;
mod ring;
pub mod serde_int;

pub use ffactor::{ddf_factor_degrees, fq_roots};
pub use fp::{is_prime_u64, Fp};
pub use fq::{is_irreducible_fp, Embedding, FiniteField, FqCtx, FqElem, FqElemRepr};
pub use intfactor::{factor_int, factor_int_seeded, is_probable_prime};
pub use linalg::{det_bareiss, kernel, rank, rref};
pub use mpoly::{monomials_of_degree, MPoly, Monomial};
pub use poly::Poly;
pub use resultant::{macaulay_resultant_cubics, resultant_univ, sylvester_matrix};
pub use ring::{Field, Ring};
