use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("division by zero in Q(tau)")]
    DivisionByZero,

    #[error("{what} = {value} lies outside the window {window}")]
    OutOfWindow {
        what: &'static str,
        value: String,
        window: String,
    },

    #[error("plane height eta = {0} does not meet the triacontahedron (|eta| > 1)")]
    EmptySection(String),

    #[error("point {0:?} lies outside the triacontahedron")]
    OutsideTriacontahedron([f64; 3]),

    #[error("invalid tile symbol {0:?} (expected 'L' or 'S')")]
    InvalidTile(char),

    #[error("tile pattern is empty")]
    EmptyPattern,

    #[error("pattern {0} does not occur within the search horizon")]
    PatternNotFound(String),

    #[error("shift vector {0:?} is not parallel to the plane (axial component {1:.3e})")]
    NotPlaneParallel([i64; 6], f64),

    #[error("density must be positive, got {0}")]
    NonPositiveDensity(f64),

    #[error("unknown density kind {0:?}")]
    UnknownKind(String),

    #[error("cannot parse golden expression {input:?}: {reason}")]
    Parse { input: String, reason: String },

    #[error("invalid configuration: {0}")]
    Config(String),
}
