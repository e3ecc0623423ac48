use std::fmt;

use thiserror::Error;

/// A syntax error with a byte offset into the offending input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(position: usize, message: impl Into<String>) -> Self {
        Self {
            position,
            message: message.into(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at position {}: {}", self.position, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Error)]
pub enum AlgebraError {
    #[error("malformed algebra document: {0}")]
    Document(String),
    #[error("layer {layer} is empty")]
    EmptyLayer { layer: usize },
    #[error("algebra has no layers")]
    NoLayers,
    #[error("duplicate basis label `{0}`")]
    DuplicateLabel(String),
    #[error("unknown basis label `{0}`")]
    UnknownLabel(String),
    #[error("basis index {index} out of range for a {dim}-dimensional algebra")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("conflicting values given for bracket [{lhs}, {rhs}]")]
    ConflictingBracket { lhs: String, rhs: String },
    #[error("nonzero self-bracket [{0}, {0}]")]
    SelfBracket(String),
    #[error("invalid coefficient: {0}")]
    Coefficient(#[from] ParseError),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("dilation factor must be nonzero")]
    ZeroDilation,
    #[error("invalid catalog parameter: {0}")]
    CatalogParameter(String),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ExteriorError {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },
    #[error("cannot contract a degree-{vector} multivector by a degree-{covector} covector")]
    ContractionDegree { vector: usize, covector: usize },
    #[error("expected degree {expected}, found {found}")]
    WrongDegree { expected: usize, found: usize },
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CurrentsError {
    #[error(transparent)]
    Exterior(#[from] ExteriorError),
    #[error("precurrent coefficient uses non-horizontal basis index {0}")]
    NotHorizontal(usize),
    #[error("1-form is not vertical: it pairs nontrivially with horizontal basis index {0}")]
    NotVertical(usize),
    #[error("restriction by dθ needs degree at least 2, found {0}")]
    DegreeTooSmall(usize),
    #[error("dilation factor must be positive")]
    NonPositiveScale,
    #[error("internal grading error: boundary term {0:?} violates the V2 ∧ H support invariant")]
    BoundarySupport(Vec<usize>),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RectError {
    #[error(transparent)]
    Exterior(#[from] ExteriorError),
    #[error(transparent)]
    Currents(#[from] CurrentsError),
    #[error("degree {degree} out of range 1..={max}")]
    DegreeOutOfRange { degree: usize, max: usize },
    #[error("witness rejected: {0}")]
    InvalidWitness(String),
}
