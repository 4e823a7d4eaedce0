use thiserror::Error;

use crate::conditions::TriState;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown label `{0}` for backend {1}")]
    UnknownLabel(String, String),

    #[error("product {0} ⊗ {1} is not defined by backend {2}")]
    MissingProduct(String, String, String),

    #[error("cannot parse `{input}`: {reason}")]
    Parse { input: String, reason: String },

    #[error("unknown backend selector `{0}`")]
    UnknownBackend(String),

    #[error("empty representation")]
    EmptyRep,

    #[error("level {level} out of range (diagram has levels 0..={max})")]
    LevelOutOfRange { level: usize, max: usize },

    #[error("vector of length {got} does not match {expected} labels")]
    IndexMismatch { expected: usize, got: usize },

    #[error("invalid fusion table: {0}")]
    Schema(String),

    #[error("fusion table failed validation: {0}")]
    Validation(String),

    #[error("label `{0}` has no image under the mapping")]
    UnmappedLabel(String),

    #[error("condition (C3) not established: {0}")]
    C3Gate(TriState<usize>),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    /// Machine-readable code used in JSON error payloads.
    pub fn code(&self) -> &'static str {
        match self {
            Error::UnknownLabel(..) => "unknown_label",
            Error::MissingProduct(..) => "missing_product",
            Error::Parse { .. } => "parse",
            Error::UnknownBackend(_) => "unknown_backend",
            Error::EmptyRep => "empty_rep",
            Error::LevelOutOfRange { .. } => "level_out_of_range",
            Error::IndexMismatch { .. } => "index_mismatch",
            Error::Schema(_) => "schema",
            Error::Validation(_) => "validation",
            Error::UnmappedLabel(_) => "unmapped_label",
            Error::C3Gate(_) => "c3_gate",
            Error::InvalidArgument(_) => "invalid_argument",
        }
    }

    pub(crate) fn parse(input: &str, reason: impl Into<String>) -> Self {
        Error::Parse {
            input: input.to_string(),
            reason: reason.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
