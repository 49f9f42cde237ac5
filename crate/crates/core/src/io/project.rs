use serde::{Deserialize, Serialize};

use super::GeoPolygon;
use crate::error::IoError;
use crate::geometry::{Point2, Polygon};

pub const EARTH_RADIUS_M: f64 = 6_371_000.0;

/// Local equirectangular projection about `(lon0, lat0)`, in degrees.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Projection {
    pub lon0: f64,
    pub lat0: f64,
}

impl Projection {
    /// Centered on the mean of the ring vertices.
    pub fn about(ring: &[(f64, f64)]) -> Self {
        let n = ring.len().max(1) as f64;
        let (sx, sy) = ring.iter().fold((0.0, 0.0), |(a, b), &(x, y)| (a + x, b + y));
        Self {
            lon0: sx / n,
            lat0: sy / n,
        }
    }

    pub fn forward(&self, lon: f64, lat: f64) -> Point2 {
        let k = self.lat0.to_radians().cos();
        Point2::new(
            EARTH_RADIUS_M * k * (lon - self.lon0).to_radians(),
            EARTH_RADIUS_M * (lat - self.lat0).to_radians(),
        )
    }

    pub fn inverse(&self, p: Point2) -> (f64, f64) {
        let k = self.lat0.to_radians().cos();
        (
            self.lon0 + (p.x / (EARTH_RADIUS_M * k)).to_degrees(),
            self.lat0 + (p.y / EARTH_RADIUS_M).to_degrees(),
        )
    }

    pub fn describe(&self) -> String {
        format!(
            "equirectangular R={EARTH_RADIUS_M} lon0={:.9} lat0={:.9}",
            self.lon0, self.lat0
        )
    }
}

/// Projects a WGS84 ring to meters and validates it.
pub fn project(g: &GeoPolygon) -> Result<(Polygon, Projection), IoError> {
    let proj = Projection::about(&g.ring);
    let pts: Vec<Point2> = g.ring.iter().map(|&(lon, lat)| proj.forward(lon, lat)).collect();
    Ok((Polygon::validate(&pts)?, proj))
}
