use thiserror::Error;

/// Errors raised by the construction, enumeration and verification routines.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("shape error: {0}")]
    Shape(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("parameter mismatch: {0}")]
    ParameterMismatch(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("{0:?} is not a face of the complex")]
    NotAFace(Vec<u32>),
    #[error("not a pseudomanifold: ridge {0:?} lies in {1} facets")]
    NotPseudomanifold(Vec<u32>, usize),
    #[error("shelling condition violated at step {step}: {reason}")]
    NotAShelling { step: usize, reason: String },
    #[error("prime decomposition degenerate: {0}")]
    Degenerate(String),
    #[error("refinement error: {0}")]
    Refinement(String),
    #[error("configuration is not full-dimensional (affine rank {rank}, dimension {dim})")]
    Rank { rank: usize, dim: usize },
    #[error("not an almost simplicial polytope: {0} non-simplex facets")]
    NotAsp(usize),
    #[error("internal consistency error: {0}")]
    Consistency(String),
    #[error("line shelling degenerate after {0} attempts")]
    ShellingDegenerate(usize),
    #[error("no constrained shelling found after {0} attempts")]
    ConstrainedShellingNotFound(usize),
    #[error("duplicate curve parameter {0}")]
    DuplicateParameter(String),
    #[error("invalid stacking move: {0}")]
    InvalidMove(String),
    #[error("invalid H-stacking: {0}")]
    InvalidHStack(String),
    #[error("unsupported regime: {0}")]
    UnsupportedRegime(String),
    #[error("missing embedding for vertex {0}")]
    MissingEmbedding(u32),
    #[error("cap exceeded: {0}")]
    CapExceeded(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
