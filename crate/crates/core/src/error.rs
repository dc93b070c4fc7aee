use std::fmt;

use crate::session::Phase;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Every failure the library can report.
///
/// Variants are grouped by how front ends surface them: domain validation
/// (422 / exit 1), workflow state conflicts (409 / exit 1), lookups (404) and
/// storage or document problems (exit 2).
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("{}", .0.join("; "))]
    Validation(Vec<String>),

    #[error("invalid rating value {0}, expected 1, 2 or 3")]
    InvalidRating(i64),

    #[error("rationale required: cell ({construct}, {element}) has LOW agreement")]
    RationaleRequired { construct: String, element: String },

    #[error("priority sum is {sum}, must be 100")]
    PrioritySum { sum: i64 },

    #[error("negative priority {value} for construct {construct}")]
    NegativePriority { construct: String, value: i64 },

    #[error("no prioritized constructs")]
    NoPrioritizedConstructs,

    #[error("missing consensus rating for cell ({construct}, {element})")]
    MissingConsensus { construct: String, element: String },

    #[error("priorities have not been set")]
    PrioritiesNotSet,

    #[error("wrong phase for {operation}: session is in {current}, requires {required}")]
    WrongPhase {
        operation: &'static str,
        current: Phase,
        required: String,
    },

    #[error("illegal phase transition from {from} to {to}")]
    IllegalTransition { from: Phase, to: Phase },

    #[error("session is CLOSED; no further changes are accepted")]
    SessionClosed,

    #[error("session {0} not found")]
    NotFound(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("unsupported schema_version {0}")]
    UnsupportedVersion(u64),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Coarse classification used by the HTTP and command-line front ends.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Validation,
    Conflict,
    NotFound,
    Document,
    Io,
}

impl Error {
    pub fn invalid(msg: impl fmt::Display) -> Self {
        Error::Validation(vec![msg.to_string()])
    }

    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Validation(_)
            | Error::InvalidRating(_)
            | Error::RationaleRequired { .. }
            | Error::PrioritySum { .. }
            | Error::NegativePriority { .. }
            | Error::NoPrioritizedConstructs => ErrorKind::Validation,
            Error::MissingConsensus { .. }
            | Error::PrioritiesNotSet
            | Error::WrongPhase { .. }
            | Error::IllegalTransition { .. }
            | Error::SessionClosed => ErrorKind::Conflict,
            Error::NotFound(_) => ErrorKind::NotFound,
            Error::Parse { .. } | Error::UnsupportedVersion(_) => ErrorKind::Document,
            Error::Io(_) => ErrorKind::Io,
        }
    }

    /// One message per line, as printed on stderr by the CLI.
    pub fn messages(&self) -> Vec<String> {
        match self {
            Error::Validation(msgs) => msgs.clone(),
            other => vec![other.to_string()],
        }
    }

    pub(crate) fn from_json(err: &serde_json::Error) -> Self {
        Error::Parse {
            line: err.line(),
            column: err.column(),
            message: err.to_string(),
        }
    }
}
