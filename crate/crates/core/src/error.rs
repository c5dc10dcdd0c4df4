use crate::expr::{EvalError, ParseError};
use crate::jet::SeedError;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error(transparent)]
    Seed(#[from] SeedError),
    #[error("metric is not positive definite (smallest eigenvalue {min_eigenvalue:e})")]
    NotPositiveDefinite { min_eigenvalue: f64 },
    #[error("metric is singular")]
    SingularMetric,
    #[error("orthonormal frame incomplete: {found} of {dim} vectors")]
    FrameIncomplete { found: usize, dim: usize },
    #[error("operation needs dimension at least {needed}, chart has {dim}")]
    DimensionTooSmall { needed: usize, dim: usize },
    #[error("regime mismatch: {0}")]
    RegimeMismatch(String),
    #[error("structure invalid: {}", .0.join("; "))]
    StructureInvalid(Vec<String>),
    #[error("invalid manifold definition: {0}")]
    Definition(String),
    #[error("unknown manifold `{0}`")]
    UnknownManifold(String),
    #[error("unsupported parameters: {0}")]
    Unsupported(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
