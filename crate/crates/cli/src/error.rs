use std::io;

use tck_core::error::{BettiError, GroebnerError, SemigroupError, TangentConeError};
use thiserror::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_VALIDATION: i32 = 2;
/// A check ran to completion and failed.
pub const EXIT_VERIFICATION: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Semigroup(#[from] SemigroupError),
    #[error("{path}:{line}: {message}")]
    TripleFile { path: String, line: usize, message: String },
    #[error("invalid monomial {0:?}: expected three comma-separated exponents")]
    Monomial(String),
    #[error("{0}")]
    Compute(TangentConeError),
    #[error(transparent)]
    Betti(#[from] BettiError),
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl From<TangentConeError> for CliError {
    fn from(e: TangentConeError) -> Self {
        match e {
            TangentConeError::Semigroup(s) => CliError::Semigroup(s),
            other => CliError::Compute(other),
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Semigroup(_) | CliError::TripleFile { .. } | CliError::Monomial(_) => EXIT_VALIDATION,
            CliError::Compute(_) | CliError::Betti(_) | CliError::Groebner(_) | CliError::Io(_) | CliError::Json(_) => EXIT_INTERNAL,
        }
    }
}
