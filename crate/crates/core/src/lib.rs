//! Exact computational toolkit for 2-descent on Jacobians of smooth plane
//! quartics: finite-field and integer arithmetic, F2-modules, theta
//! characteristic combinatorics, permutation groups, group cohomology,
//! bitangent computations and descent bookkeeping.

pub mod error;
pub mod exactalg;
pub mod f2mod;
pub mod cohom;
pub mod descent;
pub mod permgrp;
pub mod quartic;
pub mod thetacomb;

pub use error::{Error, Result};

/// Arbitrary-precision integer.
pub type Int = num_bigint::BigInt;
/// Arbitrary-precision rational in lowest terms.
pub type Rat = num_rational::BigRational;
/// Polynomials over the integers.
pub type ZPoly = exactalg::Poly<Int>;
/// Polynomials over the rationals.
pub type QPoly = exactalg::Poly<Rat>;
/// Polynomials over a prime field.
pub type FpPoly = exactalg::Poly<exactalg::Fp>;
/// Polynomials over an extension field.
pub type FqPoly = exactalg::Poly<exactalg::FqElem>;
/// Ternary forms over the integers.
pub type ZForm = exactalg::MPoly<Int>;
