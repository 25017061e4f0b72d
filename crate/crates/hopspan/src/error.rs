use thiserror::Error;

/// Errors raised by constructions, predicates and I/O.
#[derive(Debug, Error)]
pub enum Error {
    #[error("unsupported predicate between {0} and {1}")]
    UnsupportedPredicate(&'static str, &'static str),
    #[error("degenerate polygon: {0}")]
    DegeneratePolygon(String),
    #[error("tiles are not separable (overlapping interiors)")]
    NotSeparable,
    #[error("spanner is not a subgraph: edge ({0}, {1}) is not an edge of the host graph")]
    NotSubgraph(usize, usize),
    #[error("spanner has {spanner} vertices but the graph has {graph}")]
    VertexCountMismatch { spanner: usize, graph: usize },
    #[error("no cross neighbors")]
    NoCrossNeighbors,
    #[error("enclosing ellipse iteration did not converge in {0} steps")]
    NotConverged(usize),
    #[error("rectangle {0} misses the stabbing line")]
    MissesLine(usize),
    #[error("instance too large: {0}")]
    SizeOverflow(String),
    #[error("realization failed: vertices {0} and {1} disagree with the level graph")]
    Realization(usize, usize),
    #[error("invalid spanner: {0} violating edges")]
    InvalidSpanner(usize),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
