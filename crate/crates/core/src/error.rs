use thiserror::Error;

/// Errors raised by the library.
///
/// Input problems (syntax, shape, invariant violations) are distinguished from
/// `Internal`, which signals that a constructed object failed its own exact
/// re-verification.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },

    #[error("division by zero")]
    DivisionByZero,

    #[error("cyclotomic field order {order} exceeds the configured maximum {max}")]
    FieldOrderTooLarge { order: u64, max: u64 },

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("unknown vertex {0}")]
    UnknownVertex(String),

    #[error("zero vector has no root classification")]
    ZeroVector,

    #[error("invalid conjugacy class: {0}")]
    InvalidClass(String),

    #[error("eigenvalue row does not annihilate the class: {0}")]
    NotAnnihilating(String),

    #[error("reduction not applicable: {0}")]
    Reduction(String),

    #[error("characteristic polynomial does not split over the supplied eigenvalues")]
    NotSplit,

    #[error("subspace is not invariant under the endomorphism")]
    NotInvariant,

    #[error("no reduction chain from {from:?} to {to:?}")]
    NoReductionChain { from: Vec<usize>, to: Vec<usize> },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("search limit of {0} reached before the search finished")]
    LimitReached(usize),

    #[error("internal consistency failure: {0}")]
    Internal(String),

    #[error("invalid input: {0}")]
    Input(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
