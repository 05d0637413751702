//! Casimir-seeded expansions: curvature decomposition of target Casimirs,
//! seeds, derived generators and template-based closure checks, with
//! drivers for the Poincaré, Euclidean and Newton–Hooke cases.

mod closure;
mod drivers;
mod seed;

use thiserror::Error;

use crate::coeffring::CoeffError;
use crate::liealg::LieError;
use crate::uea::UeaError;

pub use closure::{
    check_constraints, verify_closure, CentralSymbol, CheckRecord, ClosureReport, ClosureSpec, Constraint,
    ConstraintRecord, Factor, GeneratorRecord, PairRecord, PowerRule, Summary, Template, Templates, Verdict, Witness,
    REPORT_SCHEMA_VERSION,
};
pub use drivers::{
    euclid_witness, newton_hooke_witness, poincare_witness, run_euclid, run_negative_nh, run_newton_hooke,
    run_newton_hooke_with, run_poincare, run_relativistic, subalgebra_preservation, KappaSign, Preservation,
};
pub use seed::{build_seed, decompose_casimir, derive_generators, CasimirDecomposition, ExpandedGenerators, Seed};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ExpansionError {
    #[error("witness violates {equation}: evaluates to {value}")]
    ConstraintViolation { equation: String, value: String },
    #[error("{curvature}^{power} lies outside the first- and second-order scheme")]
    CurvatureDegree { curvature: String, power: i32 },
    #[error("{decompositions} decompositions but {parameters} seed parameters")]
    SeedLength { decompositions: usize, parameters: usize },
    #[error("target and initial algebras use different parameter contexts")]
    ContextMismatch,
    #[error(transparent)]
    Uea(#[from] UeaError),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Coeff(#[from] CoeffError),
}
