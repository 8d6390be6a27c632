//! Window coding of planes perpendicular to a 5fold axis of the icosahedral
//! T*(2F) tiling: exact golden-ratio arithmetic, Fibonacci plane sequences,
//! triacontahedron sections, plane densities and planar Patterson functions.

pub mod cli;
pub mod density;
pub mod error;
pub mod fibonacci;
pub mod golden;
pub mod icosa;
pub mod patterson;
pub mod polygon;
pub mod terraces;

pub use error::{Error, Result};
pub use golden::GoldenScalar;
