//! Lie algebras given by structure constants, structural checks,
//! contractions, the kinematical catalog and the definition-file format.

mod algebra;
mod catalog;
mod checks;
mod contract;
mod file;

use thiserror::Error;

use crate::coeffring::CoeffError;

#[allow(unused_imports)]
pub(crate) use algebra::signed_factor;
pub use algebra::{format_linear, GeneratorId, LieAlgebra, Terms};
pub use catalog::{catalog, levi_civita, parity, parity_time, spacetime_split, worldline_split, CATALOG_NAMES};
pub use checks::{
    automorphism_check, decomposition_check, jacobi_check, AutomorphismViolation, Decomposition, DecompositionClass,
    JacobiViolation, LinearMap, PpClass,
};
pub use contract::{iw_contract, parameter_contract};
pub use file::{emit_algebra, parse_algebra, LoadOptions};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LieError {
    #[error("invalid generator name `{0}`")]
    InvalidGeneratorName(String),
    #[error("duplicate generator `{0}`")]
    DuplicateGenerator(String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("generator index out of range")]
    IndexOutOfRange,
    #[error("[{0},{0}] must be zero")]
    NonzeroSelfBracket(String),
    #[error("expected a vector of length {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("invalid decomposition: {0}")]
    InvalidDecomposition(String),
    #[error("contraction diverges in {bracket} (eps^{power})")]
    Divergence { bracket: String, power: i32 },
    #[error("unknown algebra `{0}`")]
    UnknownAlgebra(String),
    #[error("Jacobi identity fails for {} triple(s): {}", .0.len(), .0.join("; "))]
    JacobiViolation(Vec<String>),
    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error(transparent)]
    Coeff(#[from] CoeffError),
}
