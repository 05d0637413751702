//! Symbolic engine for finite-dimensional Lie algebras over exact rational
//! coefficients with named parameters.
//!
//! * [`coeffring`]: rationals and sparse parameter polynomials.
//! * [`liealg`]: structure-constant algebras, structural checks, contractions
//!   and the kinematical catalog.
//! * [`uea`]: the universal enveloping algebra with PBW normal ordering.
//! * [`expansion`]: Casimir-seeded expansions of Galilei to Poincaré,
//!   Euclidean and Newton–Hooke algebras.

pub mod coeffring;
pub mod expansion;
pub mod lexer;
pub mod liealg;
pub mod uea;
