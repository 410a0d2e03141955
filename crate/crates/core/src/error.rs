use std::fmt;

use serde::Serialize;

/// Pipeline stage an error was raised in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Stage {
    Input,
    Construction,
    Census,
    Squares,
    Presentation,
    Identification,
    Residue,
    Verification,
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Stage::Input => "input",
            Stage::Construction => "construction",
            Stage::Census => "census",
            Stage::Squares => "squares",
            Stage::Presentation => "presentation",
            Stage::Identification => "identification",
            Stage::Residue => "residue",
            Stage::Verification => "verification",
        };
        f.write_str(s)
    }
}

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("capacity exceeded: closure passed {limit} elements ({partial} enumerated)")]
    CapacityExceeded { limit: usize, partial: usize },

    #[error("precondition violated: {0}")]
    PreconditionViolation(String),

    #[error("unsupported input: {0}")]
    UnsupportedInput(String),

    #[error("construction invariant violated: {0}")]
    ConstructionInvariant(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("validation error: {0}")]
    Validation(String),

    #[error("format error: {0}")]
    Format(String),

    #[error("integer overflow in Smith normal form")]
    SmithOverflow,

    #[error("{stage} stage: {source}")]
    Stage {
        stage: Stage,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub fn at(self, stage: Stage) -> Error {
        match self {
            e @ Error::Stage { .. } => e,
            e => Error::Stage {
                stage,
                source: Box::new(e),
            },
        }
    }

    /// Innermost error, skipping stage tags.
    pub fn root(&self) -> &Error {
        match self {
            Error::Stage { source, .. } => source.root(),
            e => e,
        }
    }

    pub fn stage(&self) -> Option<Stage> {
        match self {
            Error::Stage { stage, .. } => Some(*stage),
            _ => None,
        }
    }

    /// Short machine-readable kind, used in structured error output.
    pub fn kind(&self) -> &'static str {
        match self.root() {
            Error::InvalidArgument(_) => "invalid-argument",
            Error::CapacityExceeded { .. } => "capacity-exceeded",
            Error::PreconditionViolation(_) => "precondition-violation",
            Error::UnsupportedInput(_) => "unsupported-input",
            Error::ConstructionInvariant(_) => "construction-invariant-violation",
            Error::Parse { .. } => "parse-error",
            Error::Validation(_) => "validation-error",
            Error::Format(_) => "format-error",
            Error::SmithOverflow => "smith-overflow",
            Error::Io(_) => "io-error",
            Error::Json(_) => "json-error",
            Error::Stage { .. } => unreachable!(),
        }
    }
}

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}
