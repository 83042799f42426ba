//! The free Lie algebra over the integers in Lyndon coordinates.
//!
//! Lie elements are moved in and out of the ambient tensor algebra: brackets
//! are computed as associative commutators and read back by triangular
//! back-substitution against Lyndon bracketings.

pub mod cache;
mod lie;
mod lyndon;
mod ncpoly;

pub use lie::{assoc_coords, is_lie_dynkin, lie_bracket, LieElement};
pub use lyndon::{is_lyndon, lyndon_basis, lyndon_polynomial, standard_factorization, witt_dimension, LyndonBasis};
pub use ncpoly::{Monomial, NcPoly};

/// Default truncation degree for Lie and Magnus computations.
pub const DEFAULT_MAX_DEGREE: usize = 5;
