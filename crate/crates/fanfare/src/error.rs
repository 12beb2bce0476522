//! Crate-wide error type.
//!
//! Every fallible operation in the library returns [`Result`]. Validation
//! failures carry enough data to point at the offending object (a ray, a
//! pair of cones, a wall) rather than just a message, since callers often
//! want to show the witness or retry after a repair step.

use num_rational::BigRational;
use thiserror::Error;

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

/// Anything that can go wrong in this crate.
#[derive(Debug, Error)]
pub enum Error {
    /// A vector had the wrong length for the ambient rank.
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    /// A matrix operation received incompatible shapes.
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    /// A matrix that had to be invertible was singular.
    #[error("singular matrix")]
    SingularMatrix,

    /// A matrix that had to be symmetric was not.
    #[error("matrix is not symmetric at entry ({row}, {col})")]
    NotSymmetric { row: usize, col: usize },

    /// A ray generator was zero or not primitive in the lattice.
    #[error("ray {index} is not a primitive lattice vector")]
    NonPrimitiveRay { index: usize },

    /// The same ray vector was listed twice.
    #[error("rays {first} and {second} are equal")]
    DuplicateRay { first: usize, second: usize },

    /// Cone generators were expected to be linearly independent.
    #[error("cone {index} is not simplicial: generators are linearly dependent")]
    NotSimplicial { index: usize },

    /// Two cones of a complex meet in something smaller than a common face.
    #[error("cones {first} and {second} do not intersect in a common face")]
    BadIntersection { first: usize, second: usize },

    /// A face of a listed cone is missing from the complex.
    #[error("complex is not face closed: face of cone {cone} is missing")]
    NotFaceClosed { cone: usize },

    /// A point lay outside the support of a complex or function.
    #[error("point is outside the support")]
    OutsideSupport { point: Vec<BigRational> },

    /// A subdivision point was invalid for the requested operation.
    #[error("subdivision point is not in the relative interior of a cone of the complex")]
    BadSubdivisionPoint,

    /// Two complexes or maps that had to be compatible were not.
    #[error("incompatible complexes: {0}")]
    IncompatibleComplexes(String),

    /// A piecewise-linear datum disagreed with itself on a shared face.
    #[error("linear forms disagree on the wall between cones {first} and {second}")]
    InconsistentForms { first: usize, second: usize },

    /// A polytope that had to be bounded was not.
    #[error("polytope is unbounded in direction {direction:?}")]
    Unbounded { direction: Vec<BigRational> },

    /// An oracle could not certify the requested tolerance.
    #[error("tolerance unreachable: {0}")]
    ToleranceUnreachable(String),

    /// An iteration hit its configured cap before converging.
    #[error("iteration limit reached: {0}")]
    IterationLimit(String),

    /// The input violated a documented precondition.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// Two routes to the same exact value disagreed; indicates a bug, not
    /// bad input.
    #[error("internal cross-check failed: {0}")]
    CrossCheck(String),

    /// A group element failed to stabilize the structure it must act on.
    #[error("group element {index} does not preserve the decomposition")]
    NotAdmissible { index: usize },

    /// The requested operation is only implemented for a restricted case.
    #[error("not implemented: {0}")]
    NotImplemented(String),

    /// Wire-format parse failure.
    #[error("parse error: {0}")]
    Parse(String),

    /// JSON (de)serialization failure.
    #[error(transparent)]
    Json(#[from] serde_json::Error),

    /// I/O failure while reading or writing wire data.
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Build a [`Error::Parse`] from anything printable.
    pub fn parse(msg: impl std::fmt::Display) -> Self {
        Error::Parse(msg.to_string())
    }

    /// Build a [`Error::InvalidInput`] from anything printable.
    pub fn invalid(msg: impl std::fmt::Display) -> Self {
        Error::InvalidInput(msg.to_string())
    }
}
