use thiserror::Error;

/// Errors reported by the toolkit.
///
/// Every operation either succeeds exactly or reports one of these; there
/// are no partial or approximate results.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is not symmetric")]
    NotSymmetric,

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is singular")]
    Singular,

    #[error("bilinear form is degenerate")]
    DegenerateForm,

    #[error("isotropic vector not supported here: {0}")]
    Isotropic(String),

    #[error("not an isometry")]
    NotIsometry,

    #[error("operator is not degree-reversing")]
    NotDegreeReversing,

    #[error("conjugate of the Lefschetz operator is not proportional to the adjoint")]
    ProportionalityFailure,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("cannot parse rational from {0:?}")]
    RationalParse(String),

    #[error("cannot parse lattice spec: {0}")]
    LatticeParse(String),
}
