//! Exact coefficient arithmetic.
//!
//! Coefficients are sparse polynomials with [`Rational`] coefficients in a
//! declared, ordered set of commuting parameters (a [`Context`]). One slot
//! of a context may be Laurent, which is how the contraction parameter
//! `eps` carries negative powers before a limit is taken.

mod context;
mod parse;
mod poly;
mod rational;

use thiserror::Error;

pub use context::{canonical_param_name, is_identifier, Context, CONTRACTION_PARAM, STANDARD_PARAMS};
pub use poly::{AssignValue, Assignment, Monomial, Poly};
pub use rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoeffError {
    #[error("parameter context mismatch: [{left}] vs [{right}]")]
    ContextMismatch { left: String, right: String },
    #[error("unknown parameter `{0}`")]
    UnknownParameter(String),
    #[error("unknown parameter `{name}` at column {column}")]
    UnknownParameterAt { name: String, column: usize },
    #[error("duplicate parameter `{0}`")]
    DuplicateParameter(String),
    #[error("invalid parameter name `{0}`")]
    InvalidParameterName(String),
    #[error("negative exponent on non-Laurent parameter `{0}`")]
    NegativeExponent(String),
    #[error("exponent vector has {found} entries, context has {expected}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("division by zero")]
    DivisionByZero,
    #[error("`{0}` is not invertible in the coefficient ring")]
    NotInvertible(String),
    #[error("invalid rational `{0}`")]
    InvalidRational(String),
    #[error("context has no contraction (Laurent) parameter")]
    NoLaurentParameter,
    #[error("limit diverges: term with contraction-parameter power {power}")]
    Divergence { power: i32 },
    #[error("invalid reduction rule: {0}")]
    InvalidReduction(String),
    #[error(transparent)]
    Syntax(#[from] crate::lexer::SyntaxError),
}
