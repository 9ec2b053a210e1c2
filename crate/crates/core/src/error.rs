use crate::provenance::ProvenanceHash;

/// Where a malformed positional index was used.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IndexUse {
    Extract,
    Replace,
}

/// A syntax error with the byte offset where it was detected and the tokens
/// that would have been accepted there.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("parse error at position {position}: found {found}, expected {}", .expected.join(" or "))]
pub struct ParseError {
    pub position: usize,
    pub found: String,
    pub expected: Vec<String>,
}

impl ParseError {
    pub fn new(position: usize, found: impl Into<String>, expected: &[&str]) -> Self {
        Self {
            position,
            found: found.into(),
            expected: expected.iter().map(|s| s.to_string()).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("hash codes {} and {} do not match", .left.short(), .right.short())]
    HashMismatch {
        left: ProvenanceHash,
        right: ProvenanceHash,
    },

    #[error("if using a regular index to extract, must extract each element once and once only (or none of them)")]
    BadExtractIndex,

    #[error("if using a regular index to replace, must specify each element once and once only")]
    BadReplaceIndex,

    #[error("type mismatch: {0}")]
    TypeMismatch(String),

    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("elements of a disord must all be of one kind")]
    MixedKinds,

    #[error("cannot combine a disord with a plain vector of length {0}: order is implementation-specific")]
    PlainVectorOperand(usize),

    #[error("replacement value must be length 1 or a compatible disord, not a plain vector of length {0}")]
    PlainVectorReplacement(usize),

    #[error("negative power {0} of a polynomial")]
    NegativePower(i64),

    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("object '{0}' not found")]
    UnboundName(String),

    #[error("{0}")]
    BadCall(String),
}

impl Error {
    pub fn bad_index(usage: IndexUse) -> Self {
        match usage {
            IndexUse::Extract => Error::BadExtractIndex,
            IndexUse::Replace => Error::BadReplaceIndex,
        }
    }

    /// Stable machine-readable code, independent of the message text.
    pub fn code(&self) -> &'static str {
        match self {
            Error::HashMismatch { .. } => "HashMismatch",
            Error::BadExtractIndex | Error::BadReplaceIndex => "BadIndex",
            Error::TypeMismatch(_) => "TypeMismatch",
            Error::LengthMismatch { .. } => "LengthMismatch",
            Error::MixedKinds => "MixedKinds",
            Error::PlainVectorOperand(_) => "PlainVectorOperand",
            Error::PlainVectorReplacement(_) => "PlainVectorReplacement",
            Error::NegativePower(_) => "NegativePower",
            Error::Parse(_) => "ParseError",
            Error::UnboundName(_) => "UnboundName",
            Error::BadCall(_) => "BadCall",
        }
    }

    pub(crate) fn type_mismatch(msg: impl Into<String>) -> Self {
        Error::TypeMismatch(msg.into())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
