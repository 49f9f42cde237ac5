use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeometryError {
    #[error("polygon is not simple: edges {first} and {second} intersect")]
    NotSimple { first: usize, second: usize },
    #[error("degenerate polygon: {0}")]
    Degenerate(String),
    #[error("non-finite coordinate at vertex {0}")]
    NonFinite(usize),
    #[error("arc value {arc} outside [0, {perimeter})")]
    OutOfRange { arc: f64, perimeter: f64 },
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SolveError {
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("flight range must be positive, got {0}")]
    RangeNonPositive(f64),
    #[error("epsilon must be positive, got {0}")]
    EpsilonNonPositive(f64),
    #[error("start point ({x}, {y}) is not on the convex hull of the polygon")]
    StartNotOnHull { x: f64, y: f64 },
    #[error("no candidate advances the frontier past arc {frontier}")]
    NoProgress { frontier: f64 },
    #[error("sentinel unreachable from the start node; range too small for this discretization")]
    Disconnected,
    #[error("station budget must be at least 1")]
    InfeasibleBudget,
}

#[derive(Debug, Error)]
pub enum IoError {
    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("no polygon geometry found in input")]
    NoPolygonFound,
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

pub type Result<T, E = SolveError> = std::result::Result<T, E>;
