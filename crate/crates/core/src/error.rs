use thiserror::Error;

/// Errors raised anywhere in the enumeration pipeline.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("collinear input: the three points are on one line")]
    CollinearInput,
    #[error("points {0} and {1} are identical")]
    DuplicatePoint(usize, usize),
    #[error("points {0}, {1} and {2} are collinear")]
    CollinearTriple(usize, usize, usize),
    #[error("need at least 3 points, got {0}")]
    TooFewPoints(usize),
    #[error("coordinate of point {index} exceeds the limit of {limit} in magnitude")]
    CoordinateOutOfRange { index: usize, limit: i64 },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("point lies on a boundary (general position violated)")]
    OnBoundary,
    #[error("vertex sequence does not form a simple polygon")]
    NotSimple,
    #[error("vertex sequence is invalid: {0}")]
    InvalidVertices(String),
    #[error("point {0} is not outside the polygon")]
    PointNotOutside(usize),
    #[error("no insertable point exists for a non-hull convex polygon")]
    EmptyInsertableSet,
    #[error("point {0} is not insertable")]
    NotInsertable(usize),
    #[error("vertex {0} is not embeddable")]
    NotEmbeddable(usize),
    #[error("pair (vertex {vertex}, point {point}) is not digable")]
    NotDigable { vertex: usize, point: usize },
    #[error("the convex hull has no parent")]
    IsRoot,
    #[error("incremental regnum table disagrees with recomputation at point {0}")]
    InconsistentTable(usize),
    #[error("brute force is limited to {limit} points, got {n}")]
    TooLarge { n: usize, limit: usize },
    #[error("k = {k} is out of range 0..={max}")]
    InvalidK { k: usize, max: usize },
    #[error("could not place {0} points in general position in the given range")]
    GenerationFailed(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
