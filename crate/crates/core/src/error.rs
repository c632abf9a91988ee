use thiserror::Error;

use crate::check::Witness;

/// Errors raised by library operations.
///
/// Axiom and property failures are *not* errors; they are reported through
/// [`Check`](crate::check::Check) values inside the various reports. An
/// `Error` means the operation could not be carried out at all.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("subspaces live in different ambient spaces ({left} vs {right})")]
    AmbientMismatch { left: usize, right: usize },

    #[error("unknown basis label `{0}`")]
    UnknownLabel(String),

    #[error("duplicate basis label `{0}`")]
    DuplicateLabel(String),

    #[error("bracket [{left},{right}] given twice")]
    DuplicateBracket { left: String, right: String },

    #[error("bracket [{left},{right}] must be given with the labels in basis order")]
    BracketOrder { left: String, right: String },

    #[error("[{0},{0}] must vanish for an even basis element")]
    EvenSelfBracket(String),

    #[error("bracket [{left},{right}] has a component along `{target}` of the wrong parity")]
    InhomogeneousBracket {
        left: String,
        right: String,
        target: String,
    },

    #[error("structure tensor violates supersymmetry at ({0}, {1})")]
    NotSupersymmetric(usize, usize),

    #[error("twist map is not even: alpha({source_label}) has a component along `{target}`")]
    OddTwist { source_label: String, target: String },

    #[error("algebra has no Z-grading")]
    MissingGrading,

    #[error("precondition failed: {what}")]
    Precondition { what: String, witness: Option<Witness> },

    #[error("tensor window too small: {0}")]
    WindowTooSmall(String),

    #[error("operator in degree {degree} is not in the computed span; enlarge the tensor window")]
    InconsistentReexpression { degree: i64 },

    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("{0}")]
    Invalid(String),
}

impl Error {
    pub(crate) fn precondition(what: impl Into<String>, witness: Option<Witness>) -> Self {
        Error::Precondition {
            what: what.into(),
            witness,
        }
    }

    /// The witness attached to a precondition failure, if any.
    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Error::Precondition { witness, .. } => witness.as_ref(),
            _ => None,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
