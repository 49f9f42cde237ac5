//! Polygon validation, boundary parametrization, boundary order, hull and pockets.

mod index;
mod point;
mod polygon;
pub mod predicates;
pub(crate) mod segment;

pub use point::Point2;
pub use polygon::{BoundaryPoint, Interval, Lid, Polygon, REL_TOL};

use crate::error::GeometryError;

/// Validates raw vertices into a clockwise simple [`Polygon`].
/// Slack for comparisons against a flight range. Kept far below the
/// snapping tolerance so hops never exceed `d` by more than 1e-9.
pub(crate) fn range_slack(d: f64) -> f64 {
    (1e-12 * d.abs()).min(5e-10)
}

pub fn validate_polygon(raw: &[Point2]) -> Result<Polygon, GeometryError> {
    Polygon::validate(raw)
}

/// Hull points (clockwise) and lids of `poly`.
pub fn convex_hull_and_lids(poly: &Polygon) -> (Vec<Point2>, Vec<Lid>) {
    (poly.hull_points(), poly.lids().to_vec())
}
