//! Error types shared across the crate.

use std::fmt;

/// Machine-readable code attached to every lattice-file validation issue.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IssueCode {
    /// Nonpositive or non-finite domain area.
    Area,
    /// Refinement sub-areas do not sum to the parent area.
    Sum,
    /// Loop-network target has multiplicity zero in the tensor product.
    Mult,
    /// Unparseable group string or label incompatible with the group.
    Group,
    /// Malformed JSON, wrong types, missing or unknown fields.
    Syntax,
}

impl fmt::Display for IssueCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            IssueCode::Area => "E_AREA",
            IssueCode::Sum => "E_SUM",
            IssueCode::Mult => "E_MULT",
            IssueCode::Group => "E_GROUP",
            IssueCode::Syntax => "E_SYNTAX",
        };
        f.write_str(s)
    }
}

/// One validation failure, located by a JSON-pointer-style path.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Issue {
    pub code: IssueCode,
    /// Path into the document, e.g. `/domains/2/area`.
    pub path: String,
    pub message: String,
}

impl fmt::Display for Issue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}: {}", self.code, self.path, self.message)
    }
}

/// Crate-wide error type.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Lattice-file validation failed; all detected issues are collected.
    #[error("lattice file invalid: {}", format_issues(.0))]
    Lattice(Vec<Issue>),

    /// A representation label does not fit the group (arity or range).
    #[error("label {label:?} invalid for group {group}: {reason}")]
    BadLabel {
        group: String,
        label: Vec<i64>,
        reason: String,
    },

    /// A structural precondition on an argument was violated.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// An enumeration would exceed the configured cutoff cap.
    #[error("required enumeration cutoff {needed:.1} exceeds the cap {cap:.1}")]
    ResourceExceeded { needed: f64, cap: f64 },

    /// A tolerance was too loose for the requested operation.
    #[error("tolerance too loose: {0}")]
    ToleranceTooLoose(String),

    /// Requested accuracy was not reached (e.g. integrator step count too low).
    #[error("precision failure: {0}")]
    Precision(String),

    /// A parameter combination makes a required series diverge.
    #[error("parameter error: {0}")]
    Parameter(String),
}

fn format_issues(issues: &[Issue]) -> String {
    issues
        .iter()
        .map(|i| i.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}

pub type Result<T> = std::result::Result<T, Error>;
