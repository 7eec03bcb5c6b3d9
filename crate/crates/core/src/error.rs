use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("matrix is singular")]
    Singular,

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("point outside the expression domain: inverse at node path {path:?} has a singular argument")]
    Domain { path: Vec<usize> },

    #[error("expression is not regular at the centre: inverse at node path {path:?} has a singular argument")]
    CentreSingular { path: Vec<usize> },

    #[error("level {level} is not a multiple of the centre size {s}")]
    LevelMismatch { level: usize, s: usize },

    #[error("arity mismatch: expected {expected}, got {got}")]
    Arity { expected: usize, got: usize },

    #[error("pencil is singular at the given point")]
    SingularPencil,

    #[error("value at I_s (x) X does not have the I_s (x) f block-scalar structure")]
    ScalarStructureViolation,

    #[error("no pivot sequence inverted the pencil over the algebra (not a proof of non-invertibility)")]
    AlgebraSingular,

    #[error("point is not jointly nilpotent around the centre")]
    NotNilpotent,

    #[error("realization violates the linearized lost-abbey conditions")]
    LlaViolation,

    #[error("invalid input: {0}")]
    Input(String),
}

pub type Result<T> = std::result::Result<T, Error>;
