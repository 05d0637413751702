//! Universal enveloping algebra: PBW normal ordering, products,
//! commutators, named composite elements and the identity corpus.

mod corpus;
mod element;
mod expr;
mod monomial;
mod sample;

use thiserror::Error;

use crate::coeffring::CoeffError;
use crate::lexer::SyntaxError;
use crate::liealg::LieError;

pub use corpus::{identity_corpus, verify_identity, CorpusEntry, IdentityCheck};
pub use element::{commutator, is_central, normal_form, product, CentralityWitness, EnvelopingAlgebra, UEAElement};
pub use expr::{
    named_element, named_element_in, named_expression, parse_expression, parse_expression_in, Family, NAMED_KEYS,
};
pub use monomial::{PbwMonomial, Word};
pub use sample::{random_element, random_words};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum UeaError {
    #[error("elements belong to different enveloping algebras ({left} vs {right})")]
    AlgebraMismatch { left: String, right: String },
    #[error("unknown symbol `{name}` at column {column}")]
    UnknownSymbol { name: String, column: usize },
    #[error("no named element `{key}` for algebra `{algebra}`")]
    UnknownNamedElement { key: String, algebra: String },
    #[error("monomial is not in PBW order")]
    NotNormalOrdered,
    #[error("{0} generators exceed the supported basis size")]
    TooManyGenerators(usize),
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
    #[error(transparent)]
    Coeff(CoeffError),
    #[error(transparent)]
    Lie(#[from] LieError),
}

impl From<CoeffError> for UeaError {
    fn from(e: CoeffError) -> Self {
        match e {
            CoeffError::Syntax(s) => UeaError::Syntax(s),
            other => UeaError::Coeff(other),
        }
    }
}
