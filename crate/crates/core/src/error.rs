use thiserror::Error;

use crate::report::Report;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("invalid scalar literal `{0}`")]
    InvalidScalar(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(String, String),

    #[error("matrix is singular")]
    SingularMatrix,

    #[error("trace form is degenerate")]
    SingularTrace,

    #[error("no non-degenerate symmetrizing trace found after {attempts} attempts")]
    NoSymmetrizingTrace { attempts: usize },

    #[error("invalid cell datum: {0}")]
    InvalidDatum(String),

    #[error("not cellular: {0}")]
    NotCellular(String),

    #[error("the form on cell `{0}` is zero")]
    PhiZero(String),

    #[error("inconsistent datum: {0}")]
    InconsistentDatum(String),

    #[error("semisimplicity criteria disagree: {0}")]
    EquivalenceViolation(String),

    #[error("algebra is not semisimple")]
    NotSemisimple,

    #[error("unsupported field {field} for generator `{generator}`")]
    UnsupportedField { generator: String, field: String },

    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("validation failed: {}", .0.summary())]
    Validation(Box<Report>),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
