pub mod convex_ops;
pub mod enumerator;
pub mod error;
pub mod family;
pub mod gen;
pub mod geom;
pub mod oracle;
pub mod range_queries;
pub mod svg;

#[cfg(test)]
mod fixtures;

pub use enumerator::{enumerate, enumerate_all, EnumConfig, EnumStats, Schedule, Visit};
pub use error::{Error, Result};
pub use geom::{Point, PointSet, Polygon};
