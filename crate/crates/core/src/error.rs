// SPDX-License-Identifier: Apache-2.0

use alloc::string::String;

/// Errors raised by the algebraic and numeric routines.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("linear system is inconsistent")]
    Inconsistent,
    #[error("shape mismatch: expected {expected}, found {found}")]
    Shape { expected: usize, found: usize },
    #[error("vector is not null")]
    NotNull,
    #[error("zero vector")]
    ZeroVector,
    #[error("signature is definite: no nonzero null vectors")]
    DefiniteSignature,
    #[error("bilinear form is degenerate")]
    DegenerateForm,
    #[error("invalid signature: {0}")]
    InvalidSignature(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("relation check failed: {0}")]
    RelationMismatch(String),
    #[error("search budget exhausted after {0} trials")]
    BudgetExhausted(usize),
    #[error("construction failed: {0}")]
    ConstructionFailed(String),
    #[error("vector is not tangent to the hyperquadric")]
    NotTangent,
    #[error("uniqueness violated: solution space has dimension {0}")]
    NotUnique(usize),
    #[error("falsified: {0}")]
    Falsified(String),
}

pub type Result<T> = core::result::Result<T, Error>;
