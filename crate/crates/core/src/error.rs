use thiserror::Error;

/// Errors raised by the algebra engine, the categorical constructions and
/// the bundle loader.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("context mismatch: operands live in different rings")]
    ContextMismatch,

    #[error("invalid ring: {0}")]
    InvalidRing(String),

    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },

    #[error("shape error: {0}")]
    Shape(String),

    /// One of the identities `e0*e1 = W'` or `e1*e0 = W'` fails.
    #[error("composition error: {identity} fails at entry ({row}, {col})")]
    Composition {
        identity: &'static str,
        row: usize,
        col: usize,
    },

    /// One of the commutation identities of a morphism of pairs fails.
    #[error("morphism error: {identity} fails at entry ({row}, {col})")]
    Morphism {
        identity: &'static str,
        row: usize,
        col: usize,
    },

    #[error("not a complex: composition of differentials {index} and {} is nonzero", index + 1)]
    NotAComplex { index: usize },

    #[error("incompatible module morphism: relation column {column} is not mapped into the target relations")]
    IncompatibleMorphism { column: usize },

    #[error("freeness certificate failed: {0}")]
    FreenessCertificateFailed(String),

    #[error("resource limit reached: {0}")]
    ResourceLimit(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
