//! Discrete thickness and ropelength of equilateral space polygons.

pub mod error;
pub mod experiments;
pub mod geom;
pub mod io;
pub mod optimize;
mod par;
pub mod polygon;
pub mod schur;
pub mod smooth;
pub mod thickness;

pub use error::{Error, Result};
pub use geom::Vec3;
pub use polygon::{PolyArc, Polygon};
