use thiserror::Error;

use crate::series::Triple;

/// Errors raised by the library.
///
/// Variants fall into three groups: malformed input (`Parse`, `Format`,
/// `DimensionMismatch`, ...), mathematical preconditions that do not hold for
/// the given object (`NotFiliform`, `NotInRegion`, `IndexGuard`, ...), and
/// verification failures where a check that is expected to succeed did not
/// (`SignPatternFailure`, `IdentityMismatch`).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("binomial coefficient with negative upper index C({upper}, {lower})")]
    NegativeUpperIndex { upper: i64, lower: i64 },

    #[error("unbound parameters: {}", .0.join(", "))]
    UnboundParameter(Vec<String>),

    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("index {index} out of range 1..={dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("basis change matrix is singular")]
    SingularMatrix,

    #[error("operation requires a numeric algebra; parameters present: {}", .0.join(", "))]
    ParametricInput(Vec<String>),

    #[error("algebra is not filiform")]
    NotFiliform,

    #[error("standard basis is not adapted: {}", .0.join("; "))]
    NotAdapted(Vec<String>),

    #[error("no adapted basis found in the candidate space")]
    SearchFailed,

    #[error("invalid triple ({}, {}, {}): need 4 <= z1 <= z2 < n <= 2*z2 - 2", .0.z1, .0.z2, .0.n)]
    InvalidTriple(Triple),

    #[error("invalid dimension {0}")]
    InvalidDimension(usize),

    #[error("index guard: {0}")]
    IndexGuard(String),

    #[error("degenerate denominator in {0}")]
    DegenerateDenominator(&'static str),

    #[error("triple ({}, {}, {}) is not in the empty region", .0.z1, .0.z2, .0.n)]
    NotInRegion(Triple),

    #[error("sign pattern failure at ({}, {}, {}): {detail}", .triple.z1, .triple.z2, .triple.n)]
    SignPatternFailure { triple: Triple, detail: String },

    #[error("identity mismatch: {0}")]
    IdentityMismatch(String),

    #[error("precondition failure: {0}")]
    PreconditionFailure(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("format error: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// True for errors that report a broken mathematical precondition rather
    /// than malformed input.
    pub fn is_precondition(&self) -> bool {
        matches!(
            self,
            Error::NotFiliform
                | Error::NotAdapted(_)
                | Error::SearchFailed
                | Error::InvalidTriple(_)
                | Error::InvalidDimension(_)
                | Error::IndexGuard(_)
                | Error::DegenerateDenominator(_)
                | Error::NotInRegion(_)
                | Error::ParametricInput(_)
                | Error::SingularMatrix
                | Error::PreconditionFailure(_)
        )
    }

    /// True for errors that signal a failed verification.
    pub fn is_verification_failure(&self) -> bool {
        matches!(
            self,
            Error::SignPatternFailure { .. } | Error::IdentityMismatch(_)
        )
    }
}
