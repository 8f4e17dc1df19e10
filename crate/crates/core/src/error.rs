use thiserror::Error;

/// Errors raised by the library.
///
/// The three kinds map onto distinct CLI exit codes: domain errors are bad
/// mathematical input, capacity errors are exhaustive searches refused by a
/// size guard, parse errors are malformed textual input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("capacity exceeded: {0}")]
    Capacity(String),
    #[error("parse error: {0}")]
    Parse(String),
    /// The form has no full set of rational roots.
    #[error("form does not split over Q; irreducible factor degrees {degrees:?}")]
    NotSplit { degrees: Vec<usize> },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}

pub(crate) fn capacity<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Capacity(msg.into()))
}
