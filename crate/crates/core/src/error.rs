use thiserror::Error;

/// Errors raised by the library.
///
/// The variants mirror how the command-line front end reports failures:
/// domain and usage problems are caller mistakes, budget errors mean the
/// request is valid but larger than the configured limits.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument lies outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// The operation was called in a way its contract does not allow.
    #[error("usage error: {0}")]
    Usage(String),
    /// A formula was requested outside the parameter regime where it holds.
    #[error("regime error: {0}")]
    Regime(String),
    /// Text could not be parsed as a rational, digit word or representation.
    #[error("parse error: {0}")]
    Parse(String),
    /// The request exceeds a size budget.
    #[error("budget exceeded: {0}")]
    Budget(String),
}

pub type Result<T> = std::result::Result<T, Error>;
