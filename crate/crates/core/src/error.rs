use thiserror::Error;

/// Errors raised by the embedding pipeline and its combinatorial helpers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty sequence")]
    EmptySequence,
    #[error("parameter out of range: {0}")]
    Parameter(String),
    #[error("malformed input: {0}")]
    MalformedInput(String),
    #[error("graph {graph} is not planar; Kuratowski obstruction edges: {obstruction:?}")]
    NonPlanar {
        graph: usize,
        obstruction: Vec<(i64, i64)>,
    },
    #[error("graphs are not compatibly colored: {0}")]
    Incompatible(String),
    #[error("inconsistent data: {0}")]
    Consistency(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
