use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("angle undefined: an incident edge has zero length")]
    DegenerateAngle,

    #[error("expected a unit vector, got norm {0}")]
    NotUnit(f64),

    #[error("a polygon needs at least 3 vertices, got {0}")]
    TooFewVertices(usize),

    #[error("non-finite coordinate at vertex {0}")]
    NonFinite(usize),

    #[error("edge {edge} has length {length}, expected {expected} (not equilateral)")]
    NotEquilateral {
        edge: usize,
        length: f64,
        expected: f64,
    },

    #[error("consecutive vertices {0} and {1} coincide")]
    CoincidentVertices(usize, usize),

    #[error("an arc needs at least 2 vertices, got {0}")]
    ArcTooShort(usize),

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("curve samples: {0}")]
    CurveSamples(String),

    #[error("unknown curve preset {0:?} (expected \"circle\" or \"torus:a,b\")")]
    UnknownPreset(String),

    #[error("cannot inscribe an equilateral {n}-gon: {reason}")]
    Inscribe { n: usize, reason: String },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("crankshaft pivots coincide or are adjacent ({0}, {1})")]
    BadPivots(usize, usize),

    #[error("polygon is not simple")]
    NotSimple,

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
