//! Placement of relay base stations for range-limited drones around a
//! polygonal coastline.

pub mod appsol;
pub mod certify;
pub mod error;
pub mod exterior;
pub mod geometry;
pub mod io;
pub mod optsol;
pub mod oracle;
pub mod solution;

pub use error::{GeometryError, IoError, SolveError};
pub use exterior::{DPath, GeodesicEngine, Leg, LegKind};
pub use geometry::{BoundaryPoint, Interval, Lid, Point2, Polygon};
pub use solution::StationSolution;
