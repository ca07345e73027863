use thiserror::Error;

/// Errors produced by parsing, preprocessing, and layout.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("graph is disconnected: no path between vertices {a} and {b}")]
    Disconnected { a: usize, b: usize },

    #[error("dimension mismatch: {left} points vs {right}x{right} distance matrix")]
    DimensionMismatch { left: usize, right: usize },

    #[error("distance matrix has no positive entry")]
    AllZeroDistances,

    #[error("invalid target distance d[{i}][{j}] = {value}")]
    InvalidDistance { i: usize, j: usize, value: f64 },

    #[error("need at least {min} points, got {got}")]
    TooFewPoints { min: usize, got: usize },

    #[error("distance gradient is singular: points coincident or antipodal")]
    SingularGradient,

    #[error("geodesic between antipodal points is not unique")]
    AntipodalGeodesic,

    #[error("projection is undefined at the antipode of the center")]
    ProjectionUndefined,

    #[error("distance table is not symmetric at ({a}, {b}): {forward} vs {backward}")]
    AsymmetricDistance {
        a: String,
        b: String,
        forward: f64,
        backward: f64,
    },

    #[error("{0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
