use thiserror::Error;

/// Errors raised by the toolkit.
///
/// `Input` variants mean the caller handed over something malformed; `Domain`
/// means the arguments are well formed but the operation is undefined for them
/// (a non-forest passed to a forest recursion, the zero ideal asked for its
/// regularity, ...).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("loop at vertex {0}: pair ({0},{0}) is not an edge of a simple graph")]
    Loop(usize),
    #[error("vertex out of range in pair ({u},{v}); vertices are 1..={n}")]
    VertexOutOfRange { u: usize, v: usize, n: usize },
    #[error("graph has {0} vertices; at most {max} are supported", max = crate::graphs::MAX_VERTICES)]
    TooManyVertices(usize),
    #[error("ambient mismatch: {0} vs {1} variables")]
    AmbientMismatch(usize, usize),
    #[error("invalid input: {0}")]
    Input(String),
    #[error("domain error: {0}")]
    Domain(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn input<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Input(msg.into()))
}

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
